#pragma once

// Seeded random inputs for cross-checking compute_bound against direct_oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bound.hpp"
#include "boolfn.hpp"

namespace icbound
{

struct OracleCase
{
  BooleanFunction function;
  InputDistribution distribution;
  Ordering ordering;
  ChannelModel channel;
};

template<typename Rng>
BooleanFunction random_function( std::size_t x_size, std::size_t y_size, Rng& rng )
{
  std::bernoulli_distribution coin( 0.5 );
  BooleanFunction f( x_size, y_size );
  for ( std::size_t x = 0; x < x_size; ++x )
  {
    for ( std::size_t y = 0; y < y_size; ++y )
    {
      f.set( x, y, coin( rng ) );
    }
  }
  return f;
}

template<typename Rng>
Ordering random_ordering( std::size_t y_size, Rng& rng )
{
  std::vector<std::size_t> perm( y_size );
  std::iota( perm.begin(), perm.end(), std::size_t{ 0 } );
  std::shuffle( perm.begin(), perm.end(), rng );
  return Ordering( std::move( perm ), y_size );
}

/// Uniform, dense random, or random with some zero weights, in equal proportion.
template<typename Rng>
InputDistribution random_distribution( std::size_t size, Rng& rng )
{
  std::uniform_int_distribution<int> style( 0, 2 );
  std::uniform_real_distribution<double> weight( 0.0, 1.0 );
  switch ( style( rng ) )
  {
  case 0:
    return InputDistribution::uniform( size );
  case 1:
  {
    std::vector<double> w( size );
    for ( auto& v : w )
    {
      v = weight( rng ) + 1e-3;
    }
    return InputDistribution::from_weights( std::move( w ) );
  }
  default:
  {
    std::vector<double> w( size );
    for ( auto& v : w )
    {
      v = weight( rng ) < 0.3 ? 0.0 : weight( rng );
    }
    w[std::uniform_int_distribution<std::size_t>( 0, size - 1 )( rng )] = 1.0;
    return InputDistribution::from_weights( std::move( w ) );
  }
  }
}

/// Channel of the given kind (0 deterministic, 1 symmetric, 2 asymmetric) with random error rates.
template<typename Rng>
ChannelModel random_channel( int kind, Rng& rng )
{
  std::uniform_real_distribution<double> eps( 0.0, 0.45 );
  switch ( kind % 3 )
  {
  case 0:
    return ChannelModel::deterministic();
  case 1:
    return ChannelModel::symmetric( eps( rng ) );
  default:
  {
    const double e1 = eps( rng );
    return ChannelModel::asymmetric( e1, eps( rng ) );
  }
  }
}

/// `count` cases with 1 <= x_size, y_size <= max_size, cycling through the three channel kinds.
inline std::vector<OracleCase> oracle_corpus( std::size_t count, std::uint64_t seed, std::size_t max_size = 16 )
{
  std::mt19937_64 rng( seed );
  std::uniform_int_distribution<std::size_t> size( 1, max_size );
  std::vector<OracleCase> cases;
  cases.reserve( count );
  for ( std::size_t i = 0; i < count; ++i )
  {
    const auto xs = size( rng ), ys = size( rng );
    auto f = random_function( xs, ys, rng );
    auto dist = random_distribution( xs, rng );
    auto ord = random_ordering( ys, rng );
    auto ch = random_channel( static_cast<int>( i % 3 ), rng );
    cases.push_back( { std::move( f ), std::move( dist ), std::move( ord ), ch } );
  }
  return cases;
}

struct OracleComparison
{
  std::size_t cases = 0;
  /// Largest |difference| over every per-step term and total.
  double max_deviation = 0.0;
};

inline OracleComparison compare_with_oracle( const std::vector<OracleCase>& cases )
{
  OracleComparison result;
  for ( const auto& c : cases )
  {
    const auto fast = compute_bound( c.function, c.distribution, c.ordering, c.channel );
    const auto slow = direct_oracle( c.function, c.distribution, c.ordering, c.channel );
    for ( std::size_t i = 0; i < fast.terms.size(); ++i )
    {
      result.max_deviation = std::max( result.max_deviation, std::abs( fast.terms[i] - slow.terms[i] ) );
    }
    result.max_deviation = std::max( result.max_deviation, std::abs( fast.total - slow.total ) );
    ++result.cases;
  }
  return result;
}

} // namespace icbound
