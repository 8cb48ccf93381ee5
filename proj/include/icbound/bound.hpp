#pragma once

/*
  Evaluation of the information-causality lower bound

      sum_i I(g ; f(x, y^i) | {f(x, y^j)}_{j<i}, y = y^i)

  for an ordering y^0, ..., y^{|Y|-1} of Bob's inputs.

  The history {f(x, y^j)}_{j<i} is tracked as a partition of Alice's inputs:
  two inputs share a cell iff they agree on every column seen so far.  Within
  a cell of mass w whose conditional probability of f = 1 is q, the guess g
  is a noisy copy of f, so the cell contributes w * phi(q) with

      phi(q) = h(q p1 + (1-q) p0) - q h(p1) - (1-q) h(p0),

  where p1 = Pr[g=1 | f=1] and p0 = Pr[g=1 | f=0] are fixed by the channel.
  After each step every cell is split by the value of the column.
*/

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boolfn.hpp"
#include "error.hpp"
#include "infocalc.hpp"
#include "parallel.hpp"

namespace icbound
{

/// How Bob's guess g relates to f(x, y); the success constraint is taken with equality.
struct ChannelModel
{
  enum class Kind
  {
    deterministic,
    symmetric,
    asymmetric
  };

  Kind kind = Kind::deterministic;
  /// Type-I error Pr[g=1 | f=0].
  double eps_type1 = 0.0;
  /// Type-II error Pr[g=0 | f=1].
  double eps_type2 = 0.0;

  static ChannelModel deterministic() { return {}; }

  static ChannelModel symmetric( double eps )
  {
    check_error_rate( eps, "eps" );
    return { Kind::symmetric, eps, eps };
  }

  static ChannelModel asymmetric( double eps_type1, double eps_type2 )
  {
    check_error_rate( eps_type1, "eps_I" );
    check_error_rate( eps_type2, "eps_II" );
    return { Kind::asymmetric, eps_type1, eps_type2 };
  }

  double guess_one_given_one() const noexcept { return 1.0 - eps_type2; }
  double guess_one_given_zero() const noexcept { return eps_type1; }

  /// Mutual information between g and f inside a cell where Pr[f=1] = q.
  double phi( double q ) const
  {
    q = std::clamp( q, 0.0, 1.0 );
    if ( q == 0.0 || q == 1.0 )
    {
      return 0.0;
    }
    const double p1 = guess_one_given_one(), p0 = guess_one_given_zero();
    const double mixed = std::clamp( q * p1 + ( 1.0 - q ) * p0, 0.0, 1.0 );
    return binary_entropy( mixed ) - q * binary_entropy( p1 ) - ( 1.0 - q ) * binary_entropy( p0 );
  }

  std::string name() const
  {
    switch ( kind )
    {
    case Kind::deterministic:
      return "det";
    case Kind::symmetric:
      return "sym";
    case Kind::asymmetric:
      return "asym";
    }
    return "unknown";
  }

  bool operator==( const ChannelModel& ) const = default;

private:
  static void check_error_rate( double eps, const char* what )
  {
    if ( !( eps >= 0.0 && eps < 0.5 ) )
    {
      throw argument_error( std::string( what ) + " = " + std::to_string( eps ) + " must lie in [0, 0.5)" );
    }
  }
};

/// A permutation of Bob's inputs.
class Ordering
{
public:
  Ordering() = default;

  /// Throws argument_error unless `perm` lists every index of [0, y_size) exactly once.
  Ordering( std::vector<std::size_t> perm, std::size_t y_size ) : perm_( std::move( perm ) )
  {
    if ( perm_.size() != y_size )
    {
      throw argument_error( "ordering has " + std::to_string( perm_.size() ) + " entries, expected " +
                            std::to_string( y_size ) );
    }
    std::vector<bool> seen( y_size, false );
    for ( auto y : perm_ )
    {
      if ( y >= y_size || seen[y] )
      {
        throw argument_error( "ordering is not a permutation: entry " + std::to_string( y ) +
                              ( y >= y_size ? " out of range" : " repeated" ) );
      }
      seen[y] = true;
    }
  }

  static Ordering identity( std::size_t y_size )
  {
    std::vector<std::size_t> perm( y_size );
    std::iota( perm.begin(), perm.end(), std::size_t{ 0 } );
    return Ordering( std::move( perm ), y_size );
  }

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[]( std::size_t i ) const noexcept { return perm_[i]; }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  auto begin() const noexcept { return perm_.begin(); }
  auto end() const noexcept { return perm_.end(); }

  bool operator==( const Ordering& ) const = default;

private:
  std::vector<std::size_t> perm_;
};

struct BoundReport
{
  Ordering ordering;
  ChannelModel channel;
  std::string distribution;
  std::vector<double> terms;
  double total = 0.0;
};

/// Statistics of one cell just before it is split by a column.
struct CellVisit
{
  std::size_t size;
  std::size_t ones;
  double mass;
  double ones_mass;
};

/// Partition of Alice's inputs by their history of function values.
class PartitionState
{
public:
  struct Cell
  {
    std::size_t begin;
    std::size_t end;
    double mass;
  };

  /// One cell holding every input of positive weight.
  explicit PartitionState( std::span<const double> weights )
  {
    double mass = 0.0;
    for ( std::size_t x = 0; x < weights.size(); ++x )
    {
      if ( weights[x] > 0.0 )
      {
        members_.push_back( x );
        mass += weights[x];
      }
    }
    if ( members_.size() > 1 )
    {
      cells_.push_back( { 0, members_.size(), mass } );
    }
  }

  /// Cells with at least two inputs. A single input can no longer split or contribute, so it is dropped.
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  std::span<const std::size_t> members( const Cell& cell ) const noexcept
  {
    return std::span<const std::size_t>( members_ ).subspan( cell.begin, cell.end - cell.begin );
  }

  /// True once every input is alone in its cell; further refinements are no-ops.
  bool discrete() const noexcept { return cells_.empty(); }

  /// Calls visit(CellVisit) for every cell, then splits each cell by `column` (bit x = f(x, y)).
  template<typename Visitor>
  void refine( std::span<const std::uint64_t> column, std::span<const double> weights, Visitor&& visit )
  {
    auto& next = spare_;
    next.clear();
    for ( const auto& cell : cells_ )
    {
      // stable split: zeros first, then ones
      scratch_.clear();
      std::size_t write = cell.begin;
      double ones_mass = 0.0, zeros_mass = 0.0;
      for ( std::size_t i = cell.begin; i < cell.end; ++i )
      {
        const auto x = members_[i];
        if ( ( column[x >> 6] >> ( x & 63 ) ) & 1u )
        {
          scratch_.push_back( x );
          ones_mass += weights[x];
        }
        else
        {
          members_[write++] = x;
          zeros_mass += weights[x];
        }
      }
      std::copy( scratch_.begin(), scratch_.end(), members_.begin() + static_cast<std::ptrdiff_t>( write ) );

      const auto ones = scratch_.size();
      const auto size = cell.end - cell.begin;
      visit( CellVisit{ size, ones, cell.mass, ones_mass } );

      if ( ones == 0 || ones == size )
      {
        next.push_back( cell );
        continue;
      }
      if ( write - cell.begin > 1 )
      {
        next.push_back( { cell.begin, write, zeros_mass } );
      }
      if ( cell.end - write > 1 )
      {
        next.push_back( { write, cell.end, ones_mass } );
      }
    }
    std::swap( cells_, spare_ );
  }

  /// Contribution of the next column under `channel`, then refines by it.
  double step( std::span<const std::uint64_t> column, std::span<const double> weights, const ChannelModel& channel )
  {
    double term = 0.0;
    refine( column, weights, [&]( const CellVisit& v ) {
      if ( v.ones != 0 && v.ones != v.size )
      {
        term += v.mass * channel.phi( v.ones_mass / v.mass );
      }
    } );
    return term;
  }

private:
  std::vector<std::size_t> members_;
  std::vector<Cell> cells_;
  std::vector<Cell> spare_;
  std::vector<std::size_t> scratch_;
};

/// Column-major view of a function with a fixed distribution and channel, evaluated for many orderings.
class BoundEvaluator
{
public:
  BoundEvaluator( const BooleanFunction& f, const InputDistribution& dist, const ChannelModel& channel )
      : columns_( f.columns() ), weights_( dist.weights().begin(), dist.weights().end() ), channel_( channel ),
        distribution_( dist.descriptor() )
  {
    if ( dist.size() != f.x_size() )
    {
      throw argument_error( "distribution has " + std::to_string( dist.size() ) + " weights, function has x_size " +
                            std::to_string( f.x_size() ) );
    }
  }

  std::size_t y_size() const noexcept { return columns_.size(); }
  const ChannelModel& channel() const noexcept { return channel_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::uint64_t> column( std::size_t y ) const noexcept { return columns_[y]; }

  PartitionState initial_state() const { return PartitionState( weights_ ); }

  double step( PartitionState& state, std::size_t y ) const { return state.step( columns_[y], weights_, channel_ ); }

  BoundReport evaluate( const Ordering& ordering ) const
  {
    if ( ordering.size() != y_size() )
    {
      throw argument_error( "ordering covers " + std::to_string( ordering.size() ) + " inputs, function has y_size " +
                            std::to_string( y_size() ) );
    }
    BoundReport report{ ordering, channel_, distribution_, {}, 0.0 };
    report.terms.reserve( ordering.size() );
    auto state = initial_state();
    for ( auto y : ordering )
    {
      // once all cells are singletons every remaining term is exactly zero
      report.terms.push_back( state.discrete() ? 0.0 : step( state, y ) );
    }
    for ( auto t : report.terms )
    {
      report.total += t;
    }
    return report;
  }

private:
  std::vector<std::vector<std::uint64_t>> columns_;
  std::vector<double> weights_;
  ChannelModel channel_;
  std::string distribution_;
};

inline BoundReport compute_bound( const BooleanFunction& f, const InputDistribution& dist, const Ordering& ordering,
                                  const ChannelModel& channel )
{
  if ( ordering.size() != f.y_size() )
  {
    throw argument_error( "ordering covers " + std::to_string( ordering.size() ) + " inputs, function has y_size " +
                          std::to_string( f.y_size() ) );
  }
  return BoundEvaluator( f, dist, channel ).evaluate( ordering );
}

/*
  Independent evaluation: at every step the joint distribution of
  (history vector, f(x, y^i), g) is materialised explicitly and handed to
  the generic conditional mutual information routine.
*/
inline BoundReport direct_oracle( const BooleanFunction& f, const InputDistribution& dist, const Ordering& ordering,
                                  const ChannelModel& channel )
{
  if ( dist.size() != f.x_size() )
  {
    throw argument_error( "distribution size does not match x_size" );
  }
  if ( ordering.size() != f.y_size() )
  {
    throw argument_error( "ordering size does not match y_size" );
  }

  BoundReport report{ ordering, channel, dist.descriptor(), {}, 0.0 };
  std::vector<std::vector<std::uint8_t>> history( f.x_size() );
  for ( auto y : ordering )
  {
    std::map<std::vector<std::uint8_t>, std::size_t> ids;
    std::vector<std::size_t> id_of( f.x_size() );
    for ( std::size_t x = 0; x < f.x_size(); ++x )
    {
      id_of[x] = ids.emplace( history[x], ids.size() ).first->second;
    }

    // variables: 0 = history, 1 = f(x, y), 2 = g
    std::vector<double> probs( ids.size() * 4, 0.0 );
    for ( std::size_t x = 0; x < f.x_size(); ++x )
    {
      const int value = f( x, y ) ? 1 : 0;
      const double g_one = value ? channel.guess_one_given_one() : channel.guess_one_given_zero();
      const auto base = ( id_of[x] * 2 + static_cast<std::size_t>( value ) ) * 2;
      probs[base + 0] += dist[x] * ( 1.0 - g_one );
      probs[base + 1] += dist[x] * g_one;
    }
    const JointTable table( { ids.size(), 2, 2 }, std::move( probs ) );
    const std::size_t condition[] = { 0 };
    report.terms.push_back( conditional_mutual_information( table, 2, 1, condition ) );

    for ( std::size_t x = 0; x < f.x_size(); ++x )
    {
      history[x].push_back( f( x, y ) ? 1 : 0 );
    }
  }
  for ( auto t : report.terms )
  {
    report.total += t;
  }
  return report;
}

/* orderings */

enum class OrderingStrategy
{
  natural,
  unit_vectors_first,
  kint_proof,
  greedy,
  exhaustive
};

struct OrderingRequest
{
  OrderingStrategy strategy = OrderingStrategy::natural;
  /// Intersection threshold for kint_proof.
  unsigned k = 0;
  unsigned threads = 1;
  bool allow_big_exhaustive = false;
};

/// Largest y_size the exhaustive search accepts without an explicit override.
inline constexpr std::size_t exhaustive_limit = 8;

/// n such that y_size = 2^n, or nothing.
inline std::optional<unsigned> input_bits( std::size_t size )
{
  if ( size == 0 || ( size & ( size - 1 ) ) != 0 )
  {
    return std::nullopt;
  }
  return static_cast<unsigned>( std::countr_zero( size ) );
}

/// Strings 10..0, 010..0, ..., 0..01, then every other string in increasing order.
inline Ordering unit_vectors_first_ordering( std::size_t y_size )
{
  const auto n = input_bits( y_size );
  if ( !n )
  {
    throw argument_error( "unit-vectors-first ordering needs y_size = 2^n, got " + std::to_string( y_size ) );
  }
  std::vector<std::size_t> perm;
  std::vector<bool> used( y_size, false );
  for ( unsigned i = 0; i < *n; ++i )
  {
    const auto y = static_cast<std::size_t>( unit_string( i, *n ) );
    perm.push_back( y );
    used[y] = true;
  }
  for ( std::size_t y = 0; y < y_size; ++y )
  {
    if ( !used[y] )
    {
      perm.push_back( y );
    }
  }
  return Ordering( std::move( perm ), y_size );
}

/// Weight-k strings in decreasing lexicographic order, then the remaining strings likewise.
inline Ordering kint_proof_ordering( std::size_t y_size, unsigned k )
{
  const auto n = input_bits( y_size );
  if ( !n )
  {
    throw argument_error( "kint-proof ordering needs y_size = 2^n, got " + std::to_string( y_size ) );
  }
  if ( k < 1 || k > *n )
  {
    throw argument_error( "kint-proof ordering: k = " + std::to_string( k ) + " out of range for n = " +
                          std::to_string( *n ) );
  }
  std::vector<std::size_t> perm;
  perm.reserve( y_size );
  for ( std::size_t y = y_size; y-- > 0; )
  {
    if ( static_cast<unsigned>( std::popcount( y ) ) == k )
    {
      perm.push_back( y );
    }
  }
  for ( std::size_t y = y_size; y-- > 0; )
  {
    if ( static_cast<unsigned>( std::popcount( y ) ) != k )
    {
      perm.push_back( y );
    }
  }
  return Ordering( std::move( perm ), y_size );
}

namespace detail
{

/// Minimum improvement for a candidate to replace the incumbent in a maximisation.
inline constexpr double tie_margin = 1e-12;

inline Ordering greedy_ordering( const BoundEvaluator& eval )
{
  const auto y_size = eval.y_size();
  std::vector<bool> used( y_size, false );
  std::vector<std::size_t> perm;
  auto state = eval.initial_state();
  for ( std::size_t step = 0; step < y_size; ++step )
  {
    std::size_t best_y = y_size;
    double best_term = -std::numeric_limits<double>::infinity();
    for ( std::size_t y = 0; y < y_size; ++y )
    {
      if ( used[y] )
      {
        continue;
      }
      auto trial = state;
      const double term = eval.step( trial, y );
      if ( term > best_term + tie_margin )
      {
        best_term = term;
        best_y = y;
      }
    }
    used[best_y] = true;
    perm.push_back( best_y );
    eval.step( state, best_y );
  }
  return Ordering( std::move( perm ), y_size );
}

struct SearchResult
{
  double total = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm;
};

/// Depth-first search in lexicographic order; keeps the first permutation reaching the maximum.
inline void exhaustive_search( const BoundEvaluator& eval, const PartitionState& state, double partial,
                               std::vector<std::size_t>& prefix, std::vector<bool>& used, SearchResult& best )
{
  const auto y_size = eval.y_size();
  if ( prefix.size() == y_size || state.discrete() )
  {
    if ( partial > best.total + tie_margin )
    {
      best.total = partial;
      best.perm = prefix;
      // complete the permutation with the unused inputs in increasing order
      for ( std::size_t y = 0; y < y_size; ++y )
      {
        if ( !used[y] )
        {
          best.perm.push_back( y );
        }
      }
    }
    return;
  }
  for ( std::size_t y = 0; y < y_size; ++y )
  {
    if ( used[y] )
    {
      continue;
    }
    auto next = state;
    const double term = eval.step( next, y );
    used[y] = true;
    prefix.push_back( y );
    exhaustive_search( eval, next, partial + term, prefix, used, best );
    prefix.pop_back();
    used[y] = false;
  }
}

inline Ordering exhaustive_ordering( const BoundEvaluator& eval, unsigned threads )
{
  const auto y_size = eval.y_size();
  std::vector<SearchResult> branches( y_size );
  parallel_for( y_size, threads, [&]( std::size_t first ) {
    auto state = eval.initial_state();
    const double term = eval.step( state, first );
    std::vector<std::size_t> prefix{ first };
    std::vector<bool> used( y_size, false );
    used[first] = true;
    exhaustive_search( eval, state, term, prefix, used, branches[first] );
  } );
  SearchResult best;
  for ( auto& branch : branches )
  {
    if ( branch.total > best.total + tie_margin )
    {
      best = std::move( branch );
    }
  }
  return Ordering( std::move( best.perm ), y_size );
}

inline double factorial( std::size_t n )
{
  double r = 1.0;
  for ( std::size_t i = 2; i <= n; ++i )
  {
    r *= static_cast<double>( i );
  }
  return r;
}

} // namespace detail

inline Ordering make_ordering( const OrderingRequest& request, const BooleanFunction& f, const InputDistribution& dist,
                               const ChannelModel& channel )
{
  switch ( request.strategy )
  {
  case OrderingStrategy::natural:
    return Ordering::identity( f.y_size() );
  case OrderingStrategy::unit_vectors_first:
    return unit_vectors_first_ordering( f.y_size() );
  case OrderingStrategy::kint_proof:
    return kint_proof_ordering( f.y_size(), request.k );
  case OrderingStrategy::greedy:
    return detail::greedy_ordering( BoundEvaluator( f, dist, channel ) );
  case OrderingStrategy::exhaustive:
    if ( f.y_size() > exhaustive_limit && !request.allow_big_exhaustive )
    {
      throw refusal_error( "exhaustive ordering search over y_size = " + std::to_string( f.y_size() ) + " needs " +
                           std::to_string( f.y_size() ) + "! = " +
                           std::to_string( static_cast<long long>( detail::factorial( f.y_size() ) ) ) +
                           " orderings; limit is y_size <= " + std::to_string( exhaustive_limit ) +
                           " unless explicitly allowed" );
    }
    return detail::exhaustive_ordering( BoundEvaluator( f, dist, channel ), request.threads );
  }
  throw argument_error( "unknown ordering strategy" );
}

/// The ordering each built-in family's bound is usually stated with.
inline Ordering standard_ordering( const FunctionFamily& family )
{
  using Kind = FunctionFamily::Kind;
  switch ( family.kind )
  {
  case Kind::index:
  case Kind::equality:
    return Ordering::identity( family.y_size() );
  case Kind::inner_product:
  case Kind::disjointness:
    return unit_vectors_first_ordering( family.y_size() );
  case Kind::k_intersect:
    return kint_proof_ordering( family.y_size(), family.k );
  }
  throw argument_error( "unknown family" );
}

/* closed forms */

/// Equality under the natural ordering with eps = 0, as the telescoping sum of i log i - (i-1) log(i-1).
inline double eq_closed_form_deterministic( unsigned n )
{
  if ( n < 1 || n > 30 )
  {
    throw argument_error( "eq_closed_form_deterministic: n must be in [1, 30]" );
  }
  const auto size = std::uint64_t{ 1 } << n;
  double sum = 0.0;
  for ( std::uint64_t i = 2; i <= size; ++i )
  {
    const auto di = static_cast<double>( i );
    sum += di * std::log2( di ) - ( di - 1.0 ) * std::log2( di - 1.0 );
  }
  return sum / static_cast<double>( size );
}

/// Equality under the natural ordering with symmetric error eps: 2^-n sum_{i=2}^{2^n} i [h(eps + (1-2eps)/i) - h(eps)].
inline double eq_closed_form_symmetric( unsigned n, double eps )
{
  if ( n < 1 || n > 30 )
  {
    throw argument_error( "eq_closed_form_symmetric: n must be in [1, 30]" );
  }
  if ( !( eps >= 0.0 && eps < 0.5 ) )
  {
    throw argument_error( "eq_closed_form_symmetric: eps must lie in [0, 0.5)" );
  }
  const auto size = std::uint64_t{ 1 } << n;
  const double h_eps = binary_entropy( eps );
  double sum = 0.0;
  for ( std::uint64_t i = 2; i <= size; ++i )
  {
    const auto di = static_cast<double>( i );
    sum += di * ( binary_entropy( eps + ( 1.0 - 2.0 * eps ) / di ) - h_eps );
  }
  return sum / static_cast<double>( size );
}

/// Equality with no type-I error and type-II error eps2, natural ordering.
inline double eq_closed_form_one_sided( unsigned n, double eps2 )
{
  if ( n < 1 || n > 30 )
  {
    throw argument_error( "eq_closed_form_one_sided: n must be in [1, 30]" );
  }
  if ( !( eps2 >= 0.0 && eps2 < 0.5 ) )
  {
    throw argument_error( "eq_closed_form_one_sided: eps_II must lie in [0, 0.5)" );
  }
  const auto size = std::uint64_t{ 1 } << n;
  const auto dsize = static_cast<double>( size );
  double sum = 0.0;
  for ( std::uint64_t i = 0; i + 2 <= size; ++i )
  {
    const auto remaining = static_cast<double>( size - i );
    sum += remaining / dsize * binary_entropy( ( 1.0 - eps2 ) / remaining );
  }
  return sum - ( dsize - 1.0 ) / dsize * binary_entropy( eps2 );
}

inline double binomial( unsigned n, unsigned k )
{
  if ( k > n )
  {
    return 0.0;
  }
  double r = 1.0;
  for ( unsigned i = 1; i <= k; ++i )
  {
    r = r * static_cast<double>( n - k + i ) / static_cast<double>( i );
  }
  return r;
}

/// (1 - h(eps)) sum_{i=k}^{n-1} 2^-i C(i-1, k-1) (n-i); never below (n - 2k)(1 - h(eps)).
inline double kint_analytic_bound( unsigned n, unsigned k, double eps )
{
  if ( k < 1 || k > n / 2 )
  {
    throw argument_error( "kint_analytic_bound: need 1 <= k <= floor(n/2), got n = " + std::to_string( n ) +
                          ", k = " + std::to_string( k ) );
  }
  if ( n > 1000 )
  {
    throw argument_error( "kint_analytic_bound: n too large" );
  }
  if ( !( eps >= 0.0 && eps < 0.5 ) )
  {
    throw argument_error( "kint_analytic_bound: eps must lie in [0, 0.5)" );
  }
  double sum = 0.0;
  for ( unsigned i = k; i < n; ++i )
  {
    sum += std::ldexp( binomial( i - 1, k - 1 ), -static_cast<int>( i ) ) * static_cast<double>( n - i );
  }
  return ( 1.0 - binary_entropy( eps ) ) * sum;
}

} // namespace icbound
