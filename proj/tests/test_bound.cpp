#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>

#include <icbound/bound.hpp>
#include <icbound/corpus.hpp>

using namespace icbound;

namespace
{

double one_minus_h( double eps )
{
  return 1.0 - binary_entropy( eps );
}

BoundReport natural_uniform( const BooleanFunction& f, const ChannelModel& ch )
{
  return compute_bound( f, InputDistribution::uniform( f.x_size() ), Ordering::identity( f.y_size() ), ch );
}

// k-fold nested sum: sum_{j_{k-1}=0}^{m} sum_{j_{k-2}=j_{k-1}}^{m} ... sum_{i=j_1}^{m} c_i
double nested_sum( unsigned depth, unsigned start, unsigned m, const std::function<double( unsigned )>& c )
{
  double total = 0.0;
  for ( unsigned j = start; j <= m; ++j )
  {
    total += depth == 1 ? c( j ) : nested_sum( depth - 1, j, m, c );
  }
  return total;
}

/// Best total over all orderings (lexicographically first among ties).
std::pair<Ordering, double> brute_force_best( const BooleanFunction& f, const InputDistribution& dist,
                                              const ChannelModel& ch )
{
  std::vector<std::size_t> perm( f.y_size() );
  std::iota( perm.begin(), perm.end(), std::size_t{ 0 } );
  Ordering best;
  double best_total = -1.0;
  do
  {
    const Ordering ord( perm, f.y_size() );
    const double total = compute_bound( f, dist, ord, ch ).total;
    if ( total > best_total + 1e-12 )
    {
      best_total = total;
      best = ord;
    }
  } while ( std::next_permutation( perm.begin(), perm.end() ) );
  return { best, best_total };
}

} // namespace

TEST( ChannelModel, RejectsErrorRatesOutsideRange )
{
  EXPECT_THROW( ChannelModel::symmetric( 0.5 ), argument_error );
  EXPECT_THROW( ChannelModel::symmetric( -0.1 ), argument_error );
  EXPECT_THROW( ChannelModel::asymmetric( 0.1, 0.6 ), argument_error );
  EXPECT_NO_THROW( ChannelModel::asymmetric( 0.0, 0.49 ) );
}

TEST( ChannelModel, PhiMatchesChannelFormulas )
{
  const auto sym = ChannelModel::symmetric( 0.1 );
  const auto asym = ChannelModel::asymmetric( 0.05, 0.2 );
  for ( double q = 0.05; q < 1.0; q += 0.05 )
  {
    EXPECT_NEAR( ChannelModel::deterministic().phi( q ), binary_entropy( q ), 1e-12 );
    EXPECT_NEAR( sym.phi( q ), binary_entropy( 0.1 + q * 0.8 ) - binary_entropy( 0.1 ), 1e-12 );
    EXPECT_NEAR( asym.phi( q ),
                 binary_entropy( q * 0.8 + ( 1 - q ) * 0.05 ) - ( q * binary_entropy( 0.2 ) + ( 1 - q ) * binary_entropy( 0.05 ) ),
                 1e-12 );
  }
}

TEST( Ordering, Validation )
{
  EXPECT_THROW( Ordering( { 0, 1 }, 3 ), argument_error );
  EXPECT_THROW( Ordering( { 0, 0, 1 }, 3 ), argument_error );
  EXPECT_THROW( Ordering( { 0, 1, 3 }, 3 ), argument_error );
  EXPECT_NO_THROW( Ordering( { 2, 0, 1 }, 3 ) );
}

TEST( ComputeBound, EqualityTwoDeterministic )
{
  const auto r = natural_uniform( build_family( FunctionFamily::equality( 2 ) ), ChannelModel::deterministic() );
  EXPECT_NEAR( r.total, 2.0, 1e-9 );
}

TEST( ComputeBound, InnerProductTwoUnitFirst )
{
  const auto f = build_family( FunctionFamily::inner_product( 2 ) );
  const auto r = compute_bound( f, InputDistribution::uniform( 4 ), unit_vectors_first_ordering( 4 ),
                                ChannelModel::deterministic() );
  ASSERT_EQ( r.terms.size(), 4u );
  const double expected[] = { 1.0, 1.0, 0.0, 0.0 };
  for ( std::size_t i = 0; i < 4; ++i )
  {
    EXPECT_NEAR( r.terms[i], expected[i], 1e-9 );
  }
  EXPECT_NEAR( r.total, 2.0, 1e-9 );
}

TEST( ComputeBound, IndexFourSymmetric )
{
  const auto r = natural_uniform( build_family( FunctionFamily::index( 4 ) ), ChannelModel::symmetric( 0.1 ) );
  EXPECT_NEAR( r.total, 4.0 * one_minus_h( 0.1 ), 1e-9 );
  EXPECT_NEAR( r.total, 2.124018, 1e-6 );
}

TEST( ComputeBound, EqualityOneSymmetric )
{
  const auto r = natural_uniform( build_family( FunctionFamily::equality( 1 ) ), ChannelModel::symmetric( 0.1 ) );
  EXPECT_NEAR( r.total, 0.531004, 1e-6 );
  EXPECT_NEAR( r.total, eq_closed_form_symmetric( 1, 0.1 ), 1e-9 );
}

TEST( ComputeBound, ReportMetadata )
{
  const auto f = build_family( FunctionFamily::index( 3 ) );
  const auto ord = Ordering( { 2, 0, 1 }, 3 );
  const auto ch = ChannelModel::symmetric( 0.2 );
  const auto r = compute_bound( f, InputDistribution::uniform( 8 ), ord, ch );
  EXPECT_EQ( r.ordering, ord );
  EXPECT_EQ( r.channel, ch );
  EXPECT_EQ( r.distribution, "uniform" );
  EXPECT_NEAR( r.total, std::accumulate( r.terms.begin(), r.terms.end(), 0.0 ), 1e-9 );
}

TEST( ComputeBound, SizeMismatches )
{
  const auto f = build_family( FunctionFamily::index( 2 ) );
  EXPECT_THROW( compute_bound( f, InputDistribution::uniform( 3 ), Ordering::identity( 2 ),
                               ChannelModel::deterministic() ),
                argument_error );
  EXPECT_THROW( compute_bound( f, InputDistribution::uniform( 4 ), Ordering::identity( 3 ),
                               ChannelModel::deterministic() ),
                argument_error );
  EXPECT_THROW( direct_oracle( f, InputDistribution::uniform( 3 ), Ordering::identity( 2 ),
                               ChannelModel::deterministic() ),
                argument_error );
  EXPECT_THROW( direct_oracle( f, InputDistribution::uniform( 4 ), Ordering::identity( 1 ),
                               ChannelModel::deterministic() ),
                argument_error );
}

TEST( ComputeBound, ZeroWeightInputsAreIgnored )
{
  const auto f = build_family( FunctionFamily::equality( 2 ) );
  const auto dist = InputDistribution::from_weights( { 1.0, 1.0, 0.0, 0.0 } );
  const auto fast = compute_bound( f, dist, Ordering::identity( 4 ), ChannelModel::deterministic() );
  const auto slow = direct_oracle( f, dist, Ordering::identity( 4 ), ChannelModel::deterministic() );
  EXPECT_NEAR( fast.total, 1.0, 1e-9 );
  EXPECT_NEAR( slow.total, 1.0, 1e-9 );
}

TEST( DirectOracle, Examples )
{
  const BooleanFunction zero( 5, 6 );
  std::mt19937_64 rng( 3 );
  for ( int kind = 0; kind < 3; ++kind )
  {
    const auto r = direct_oracle( zero, InputDistribution::uniform( 5 ), random_ordering( 6, rng ),
                                  random_channel( kind, rng ) );
    EXPECT_NEAR( r.total, 0.0, 1e-12 );
  }
  const auto eq = direct_oracle( build_family( FunctionFamily::equality( 2 ) ), InputDistribution::uniform( 4 ),
                                 Ordering::identity( 4 ), ChannelModel::deterministic() );
  EXPECT_NEAR( eq.total, 2.0, 1e-9 );
}

TEST( DirectOracle, AgreesOnEightByEight )
{
  std::mt19937_64 rng( 17 );
  for ( int i = 0; i < 20; ++i )
  {
    const auto f = random_function( 8, 8, rng );
    const auto dist = InputDistribution::uniform( 8 );
    const auto ord = random_ordering( 8, rng );
    const auto ch = random_channel( i, rng );
    const auto fast = compute_bound( f, dist, ord, ch );
    const auto slow = direct_oracle( f, dist, ord, ch );
    for ( std::size_t s = 0; s < 8; ++s )
    {
      EXPECT_NEAR( fast.terms[s], slow.terms[s], 1e-9 );
    }
  }
}

TEST( DirectOracle, RandomCorpus )
{
  const auto result = compare_with_oracle( oracle_corpus( 150, 99 ) );
  EXPECT_EQ( result.cases, 150u );
  EXPECT_LE( result.max_deviation, 1e-9 );
}

TEST( ComputeBound, TermsInUnitIntervalAndTotalCapped )
{
  std::mt19937_64 rng( 23 );
  for ( const auto& c : oracle_corpus( 100, 41 ) )
  {
    const auto r = compute_bound( c.function, c.distribution, c.ordering, c.channel );
    for ( auto t : r.terms )
    {
      EXPECT_GE( t, -1e-12 );
      EXPECT_LE( t, 1.0 + 1e-12 );
    }
    EXPECT_LE( r.total, std::log2( static_cast<double>( c.function.x_size() ) ) + 1e-9 );
  }
}

TEST( ComputeBound, OutputFlipsLeaveTermsUnchanged )
{
  std::mt19937_64 rng( 31 );
  std::bernoulli_distribution coin( 0.5 );
  for ( const auto& c : oracle_corpus( 60, 5 ) )
  {
    if ( c.channel.kind == ChannelModel::Kind::asymmetric )
    {
      continue;
    }
    const auto ys = c.function.y_size();
    auto flips = std::make_unique<bool[]>( ys );
    for ( std::size_t y = 0; y < ys; ++y )
    {
      flips[y] = coin( rng );
    }
    const auto flipped = flip_outputs( c.function, std::span<const bool>( flips.get(), ys ) );
    const auto a = compute_bound( c.function, c.distribution, c.ordering, c.channel );
    const auto b = compute_bound( flipped, c.distribution, c.ordering, c.channel );
    for ( std::size_t i = 0; i < ys; ++i )
    {
      EXPECT_NEAR( a.terms[i], b.terms[i], 1e-9 );
    }
  }
}

TEST( ComputeBound, OutputFlipSwapsAsymmetricErrorTypes )
{
  // flipping every output exchanges the roles of the two error types
  for ( const auto& c : oracle_corpus( 30, 8 ) )
  {
    const auto ch = ChannelModel::asymmetric( 0.05, 0.3 );
    const auto ys = c.function.y_size();
    auto flips = std::make_unique<bool[]>( ys );
    std::fill( flips.get(), flips.get() + ys, true );
    const auto flipped = flip_outputs( c.function, std::span<const bool>( flips.get(), ys ) );
    const auto a = compute_bound( c.function, c.distribution, c.ordering, ch );
    const auto b = compute_bound( flipped, c.distribution, c.ordering, ChannelModel::asymmetric( 0.3, 0.05 ) );
    for ( std::size_t i = 0; i < ys; ++i )
    {
      EXPECT_NEAR( a.terms[i], b.terms[i], 1e-9 );
    }
  }
}

TEST( ComputeBound, JointXPermutationLeavesTotalUnchanged )
{
  std::mt19937_64 rng( 37 );
  for ( const auto& c : oracle_corpus( 60, 6 ) )
  {
    const auto xs = c.function.x_size();
    std::vector<std::size_t> sigma( xs );
    std::iota( sigma.begin(), sigma.end(), std::size_t{ 0 } );
    std::shuffle( sigma.begin(), sigma.end(), rng );
    std::vector<double> weights( xs );
    for ( std::size_t x = 0; x < xs; ++x )
    {
      weights[x] = c.distribution[sigma[x]];
    }
    const auto permuted = apply_x_substitution( c.function, sigma );
    const auto a = compute_bound( c.function, c.distribution, c.ordering, c.channel );
    const auto b = compute_bound( permuted, InputDistribution::from_weights( weights ), c.ordering, c.channel );
    EXPECT_NEAR( a.total, b.total, 1e-9 );
  }
}

TEST( Families, IndexIsOrderingIndependent )
{
  std::mt19937_64 rng( 43 );
  for ( unsigned n = 1; n <= 12; ++n )
  {
    const auto f = build_family( FunctionFamily::index( n ) );
    const auto dist = InputDistribution::uniform( f.x_size() );
    for ( double eps : { 0.0, 0.05, 0.1, 0.25 } )
    {
      const auto ch = eps == 0.0 ? ChannelModel::deterministic() : ChannelModel::symmetric( eps );
      for ( int trial = 0; trial < 10; ++trial )
      {
        EXPECT_NEAR( compute_bound( f, dist, random_ordering( n, rng ), ch ).total, n * one_minus_h( eps ), 1e-9 );
      }
    }
  }
}

TEST( Families, InnerProductAndDisjointnessUnitFirst )
{
  for ( unsigned n = 1; n <= 10; ++n )
  {
    for ( auto family : { FunctionFamily::inner_product( n ), FunctionFamily::disjointness( n ) } )
    {
      const auto f = build_family( family );
      for ( double eps : { 0.0, 0.1 } )
      {
        const auto r = compute_bound( f, InputDistribution::uniform( f.x_size() ),
                                      unit_vectors_first_ordering( f.y_size() ), ChannelModel::symmetric( eps ) );
        for ( std::size_t i = 0; i < r.terms.size(); ++i )
        {
          EXPECT_NEAR( r.terms[i], i < n ? one_minus_h( eps ) : 0.0, 1e-9 ) << family.name() << n << " step " << i;
        }
      }
    }
  }
}

TEST( Families, EqualityTwoSidedCap )
{
  const double eps = 0.1;
  const double cap = ( 1 - 2 * eps ) * std::log2( ( 1 - eps ) / eps );
  EXPECT_NEAR( cap, 2.535940, 1e-6 );
  for ( unsigned n = 1; n <= 12; ++n )
  {
    const auto total = natural_uniform( build_family( FunctionFamily::equality( n ) ), ChannelModel::symmetric( eps ) ).total;
    EXPECT_LE( total, cap + 1e-9 ) << n;
  }
}

TEST( Orderings, UnitVectorsFirst )
{
  EXPECT_EQ( unit_vectors_first_ordering( 4 ).perm(), ( std::vector<std::size_t>{ 2, 1, 0, 3 } ) );
  EXPECT_EQ( unit_vectors_first_ordering( 8 ).perm(), ( std::vector<std::size_t>{ 4, 2, 1, 0, 3, 5, 6, 7 } ) );
  EXPECT_THROW( unit_vectors_first_ordering( 6 ), argument_error );
}

TEST( Orderings, KintProof )
{
  EXPECT_EQ( kint_proof_ordering( 8, 1 ).perm(), ( std::vector<std::size_t>{ 4, 2, 1, 7, 6, 5, 3, 0 } ) );
  EXPECT_THROW( kint_proof_ordering( 8, 0 ), argument_error );
  EXPECT_THROW( kint_proof_ordering( 12, 1 ), argument_error );
}

TEST( Orderings, KintProofStartsWithTableSequence )
{
  // n = 5, k = 2: the first column of the proof table is 11000, 10100, 10010, 10001.
  const auto perm = kint_proof_ordering( 32, 2 ).perm();
  const std::vector<std::size_t> head( perm.begin(), perm.begin() + 4 );
  EXPECT_EQ( head, ( std::vector<std::size_t>{ 0b11000, 0b10100, 0b10010, 0b10001 } ) );
  EXPECT_EQ( perm[4], 0b01100u );
}

TEST( Orderings, MakeOrderingStrategies )
{
  const auto f = build_family( FunctionFamily::inner_product( 2 ) );
  const auto dist = InputDistribution::uniform( 4 );
  const auto det = ChannelModel::deterministic();
  OrderingRequest request;
  EXPECT_EQ( make_ordering( request, f, dist, det ), Ordering::identity( 4 ) );
  request.strategy = OrderingStrategy::unit_vectors_first;
  EXPECT_EQ( make_ordering( request, f, dist, det ).perm(), ( std::vector<std::size_t>{ 2, 1, 0, 3 } ) );
  request.strategy = OrderingStrategy::kint_proof;
  request.k = 1;
  EXPECT_EQ( make_ordering( request, f, dist, det ), kint_proof_ordering( 4, 1 ) );
}

TEST( Orderings, ExhaustiveOnInnerProduct )
{
  const auto f = build_family( FunctionFamily::inner_product( 2 ) );
  const auto dist = InputDistribution::uniform( 4 );
  OrderingRequest request{ OrderingStrategy::exhaustive };
  const auto ord = make_ordering( request, f, dist, ChannelModel::deterministic() );
  const double unit_first =
      compute_bound( f, dist, unit_vectors_first_ordering( 4 ), ChannelModel::deterministic() ).total;
  EXPECT_NEAR( compute_bound( f, dist, ord, ChannelModel::deterministic() ).total, 2.0, 1e-9 );
  EXPECT_NEAR( unit_first, 2.0, 1e-9 );
  EXPECT_EQ( ord, brute_force_best( f, dist, ChannelModel::deterministic() ).first );
}

TEST( Orderings, ExhaustiveMatchesBruteForce )
{
  std::mt19937_64 rng( 53 );
  for ( int i = 0; i < 30; ++i )
  {
    const std::size_t xs = 3 + i % 6, ys = 2 + i % 5;
    const auto f = random_function( xs, ys, rng );
    const auto dist = random_distribution( xs, rng );
    const auto ch = random_channel( i, rng );
    const auto [best, best_total] = brute_force_best( f, dist, ch );
    for ( unsigned threads : { 1u, 3u } )
    {
      OrderingRequest request{ OrderingStrategy::exhaustive, 0, threads };
      const auto ord = make_ordering( request, f, dist, ch );
      EXPECT_NEAR( compute_bound( f, dist, ord, ch ).total, best_total, 1e-9 );
      EXPECT_EQ( ord, best );
    }
  }
}

TEST( Orderings, ExhaustiveRefusesLargeY )
{
  const auto f = build_family( FunctionFamily::inner_product( 4 ) );
  OrderingRequest request{ OrderingStrategy::exhaustive };
  try
  {
    make_ordering( request, f, InputDistribution::uniform( 16 ), ChannelModel::deterministic() );
    FAIL() << "expected a refusal";
  }
  catch ( const refusal_error& e )
  {
    EXPECT_NE( std::string( e.what() ).find( "16! = 20922789888000" ), std::string::npos );
  }
}

TEST( Orderings, ExhaustiveOverrideRuns )
{
  std::mt19937_64 rng( 59 );
  const auto f = random_function( 3, 9, rng );
  OrderingRequest request{ OrderingStrategy::exhaustive };
  EXPECT_THROW( make_ordering( request, f, InputDistribution::uniform( 3 ), ChannelModel::deterministic() ),
                refusal_error );
  request.allow_big_exhaustive = true;
  const auto ord = make_ordering( request, f, InputDistribution::uniform( 3 ), ChannelModel::deterministic() );
  EXPECT_EQ( ord.size(), 9u );
}

TEST( Orderings, GreedyPicksLargestNextTerm )
{
  std::mt19937_64 rng( 61 );
  for ( int i = 0; i < 30; ++i )
  {
    const auto f = random_function( 6, 5, rng );
    const auto dist = random_distribution( 6, rng );
    const auto ch = random_channel( i, rng );
    OrderingRequest request{ OrderingStrategy::greedy };
    const auto ord = make_ordering( request, f, dist, ch );

    // replay: each chosen y maximises the next term given the prefix, smallest index on ties
    std::vector<std::size_t> prefix;
    for ( std::size_t step = 0; step < ord.size(); ++step )
    {
      double best = -1.0;
      std::size_t best_y = 0;
      for ( std::size_t y = 0; y < 5; ++y )
      {
        if ( std::find( prefix.begin(), prefix.end(), y ) != prefix.end() )
        {
          continue;
        }
        auto trial = prefix;
        trial.push_back( y );
        for ( std::size_t z = 0; z < 5; ++z )
        {
          if ( std::find( trial.begin(), trial.end(), z ) == trial.end() )
          {
            trial.push_back( z );
          }
        }
        const double term = compute_bound( f, dist, Ordering( trial, 5 ), ch ).terms[step];
        if ( term > best + 1e-12 )
        {
          best = term;
          best_y = y;
        }
      }
      EXPECT_EQ( ord[step], best_y ) << "case " << i << " step " << step;
      prefix.push_back( ord[step] );
    }
  }
}

TEST( Orderings, SearchIsThreadIndependent )
{
  const auto f = build_family( FunctionFamily::k_intersect( 3, 1 ) );
  const auto dist = InputDistribution::uniform( 8 );
  const auto ch = ChannelModel::symmetric( 0.1 );
  for ( auto strategy : { OrderingStrategy::greedy, OrderingStrategy::exhaustive } )
  {
    OrderingRequest one{ strategy, 0, 1 }, many{ strategy, 0, 4 }, all{ strategy, 0, 0 };
    const auto a = make_ordering( one, f, dist, ch );
    EXPECT_EQ( a, make_ordering( many, f, dist, ch ) );
    EXPECT_EQ( a, make_ordering( all, f, dist, ch ) );
  }
}

TEST( ClosedForms, EqualityDeterministic )
{
  EXPECT_NEAR( eq_closed_form_deterministic( 1 ), 1.0, 1e-9 );
  EXPECT_NEAR( eq_closed_form_deterministic( 3 ), 3.0, 1e-9 );
  EXPECT_NEAR( eq_closed_form_deterministic( 10 ), 10.0, 1e-9 );
  for ( unsigned n = 1; n <= 8; ++n )
  {
    EXPECT_NEAR( natural_uniform( build_family( FunctionFamily::equality( n ) ), ChannelModel::deterministic() ).total,
                 eq_closed_form_deterministic( n ), 1e-9 );
  }
}

TEST( ClosedForms, EqualitySymmetric )
{
  EXPECT_NEAR( eq_closed_form_symmetric( 1, 0.1 ), 0.531004, 1e-6 );
  EXPECT_NEAR( eq_closed_form_symmetric( 4, 0.1 ),
               natural_uniform( build_family( FunctionFamily::equality( 4 ) ), ChannelModel::symmetric( 0.1 ) ).total,
               1e-9 );
  for ( unsigned n = 1; n <= 16; ++n )
  {
    EXPECT_LE( eq_closed_form_symmetric( n, 0.1 ), 0.8 * std::log2( 9.0 ) + 1e-9 );
  }
  EXPECT_THROW( eq_closed_form_symmetric( 2, 0.5 ), argument_error );
}

TEST( ClosedForms, EqualityOneSided )
{
  const auto eq2 = build_family( FunctionFamily::equality( 2 ) );
  EXPECT_NEAR( eq_closed_form_one_sided( 2, 0.0 ), natural_uniform( eq2, ChannelModel::asymmetric( 0, 0 ) ).total, 1e-9 );
  // n = 2, eps_II = 0: (4/4) h(1/4) + (3/4) h(1/3) + (2/4) h(1/2)
  EXPECT_NEAR( eq_closed_form_one_sided( 2, 0.0 ),
               binary_entropy( 0.25 ) + 0.75 * binary_entropy( 1.0 / 3 ) + 0.5 * binary_entropy( 0.5 ), 1e-12 );
  EXPECT_NEAR( eq_closed_form_one_sided( 2, 0.0 ), eq_closed_form_deterministic( 2 ), 1e-9 );
  EXPECT_NEAR( eq_closed_form_one_sided( 4, 0.1 ),
               natural_uniform( build_family( FunctionFamily::equality( 4 ) ), ChannelModel::asymmetric( 0, 0.1 ) ).total,
               1e-9 );
  EXPECT_GE( eq_closed_form_one_sided( 12, 0.1 ), 8.8 );
  EXPECT_THROW( eq_closed_form_one_sided( 0, 0.1 ), argument_error );
}

TEST( ClosedForms, KintAnalytic )
{
  EXPECT_NEAR( kint_analytic_bound( 3, 1, 0.0 ), 1.25, 1e-12 );
  EXPECT_GE( kint_analytic_bound( 6, 2, 0.0 ), 2.0 );
  for ( unsigned n = 2; n <= 12; ++n )
  {
    EXPECT_NEAR( kint_analytic_bound( n, 1, 0.0 ), n - 2.0 + 2.0 / std::ldexp( 1.0, n ), 1e-12 );
  }
  EXPECT_THROW( kint_analytic_bound( 4, 3, 0.0 ), argument_error );
  EXPECT_THROW( kint_analytic_bound( 4, 0, 0.0 ), argument_error );
  EXPECT_THROW( kint_analytic_bound( 4, 1, 0.5 ), argument_error );
}

TEST( ClosedForms, KintNestedSum )
{
  for ( unsigned n = 2; n <= 10; ++n )
  {
    for ( unsigned k = 1; k <= n / 2; ++k )
    {
      for ( double eps : { 0.0, 0.1 } )
      {
        const auto c = [&]( unsigned i ) { return std::ldexp( 1.0, -static_cast<int>( k + i ) ) * ( n - k - i ); };
        const double nested = one_minus_h( eps ) * nested_sum( k, 0, n - k - 1, c );
        EXPECT_NEAR( kint_analytic_bound( n, k, eps ), nested, 1e-9 ) << n << " " << k;
        EXPECT_GE( kint_analytic_bound( n, k, eps ), ( n - 2.0 * k ) * one_minus_h( eps ) - 1e-12 );
      }
    }
  }
}

TEST( Families, KintProofOrderingMeetsInequalitySmall )
{
  for ( unsigned n = 2; n <= 10; ++n )
  {
    for ( unsigned k = 1; k <= n / 2; ++k )
    {
      const auto f = build_family( FunctionFamily::k_intersect( n, k ) );
      for ( double eps : { 0.0, 0.1 } )
      {
        const auto r = compute_bound( f, InputDistribution::uniform( f.x_size() ), kint_proof_ordering( f.y_size(), k ),
                                      ChannelModel::symmetric( eps ) );
        EXPECT_GE( r.total, ( n - 2.0 * k ) * one_minus_h( eps ) - 1e-9 ) << n << " " << k;
      }
    }
  }
}

TEST( StandardOrdering, PerFamily )
{
  EXPECT_EQ( standard_ordering( FunctionFamily::index( 3 ) ), Ordering::identity( 3 ) );
  EXPECT_EQ( standard_ordering( FunctionFamily::equality( 2 ) ), Ordering::identity( 4 ) );
  EXPECT_EQ( standard_ordering( FunctionFamily::disjointness( 2 ) ), unit_vectors_first_ordering( 4 ) );
  EXPECT_EQ( standard_ordering( FunctionFamily::k_intersect( 4, 2 ) ), kint_proof_ordering( 16, 2 ) );
}

TEST( PartitionState, SplitsByColumnAndDropsSingletons )
{
  // x_size 5, column bits 1 at x = 1, 3, 4
  const std::vector<double> weights{ 0.1, 0.2, 0.3, 0.25, 0.15 };
  const std::vector<std::uint64_t> column{ 0b11010 };
  PartitionState state( weights );
  ASSERT_EQ( state.cells().size(), 1u );
  EXPECT_NEAR( state.cells()[0].mass, 1.0, 1e-12 );
  std::vector<CellVisit> visits;
  state.refine( column, weights, [&]( const CellVisit& v ) { visits.push_back( v ); } );
  ASSERT_EQ( visits.size(), 1u );
  EXPECT_EQ( visits[0].size, 5u );
  EXPECT_EQ( visits[0].ones, 3u );
  EXPECT_NEAR( visits[0].ones_mass, 0.6, 1e-12 );
  ASSERT_EQ( state.cells().size(), 2u );
  EXPECT_NEAR( state.cells()[0].mass, 0.4, 1e-12 );
  EXPECT_NEAR( state.cells()[1].mass, 0.6, 1e-12 );
  const auto zeros = state.members( state.cells()[0] );
  EXPECT_EQ( std::vector<std::size_t>( zeros.begin(), zeros.end() ), ( std::vector<std::size_t>{ 0, 2 } ) );
  EXPECT_FALSE( state.discrete() );

  // separate 0 from 2 and 1 from {3, 4}: only {3, 4} remains unsettled
  state.refine( std::vector<std::uint64_t>{ 0b00100 | 0b00010 }, weights, []( const CellVisit& ) {} );
  ASSERT_EQ( state.cells().size(), 1u );
  EXPECT_NEAR( state.cells()[0].mass, 0.4, 1e-12 );
  state.refine( std::vector<std::uint64_t>{ 0b01000 }, weights, []( const CellVisit& ) {} );
  EXPECT_TRUE( state.discrete() );
}

TEST( PartitionState, ZeroWeightInputsAreExcluded )
{
  const std::vector<double> weights{ 0.0, 0.5, 0.0, 0.5 };
  PartitionState state( weights );
  ASSERT_EQ( state.cells().size(), 1u );
  EXPECT_EQ( state.members( state.cells()[0] ).size(), 2u );
}
