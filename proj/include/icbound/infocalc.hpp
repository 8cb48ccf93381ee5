#pragma once

/*
  Shannon quantities over finite classical distributions, in bits.

  A JointTable is a row-major array over a list of discrete variables: the
  first variable varies slowest.  Conditional mutual information is computed
  by marginalising onto (A, B, C) and summing

      p(a,b,c) log [ p(a,b,c) p(c) / (p(a,c) p(b,c)) ]

  with the 0 log 0 = 0 convention.
*/

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace icbound
{

/// Shared equality tolerance for all computed quantities.
inline constexpr double tolerance = 1e-9;

/// -p log2 p, with 0 log 0 = 0.
inline double entropy_term( double p )
{
  return p > 0.0 ? -p * std::log2( p ) : 0.0;
}

inline double binary_entropy( double p )
{
  if ( !( p >= 0.0 && p <= 1.0 ) )
  {
    throw domain_error( "binary_entropy: p = " + std::to_string( p ) + " is outside [0, 1]" );
  }
  return entropy_term( p ) + entropy_term( 1.0 - p );
}

/// Entropy of a finite distribution; the weights must already sum to one.
inline double entropy( std::span<const double> probs )
{
  double h = 0.0;
  for ( auto p : probs )
  {
    if ( p < 0.0 )
    {
      throw domain_error( "entropy: negative probability" );
    }
    h += entropy_term( p );
  }
  return h;
}

class JointTable
{
public:
  JointTable( std::vector<std::size_t> dims, std::vector<double> probs )
      : dims_( std::move( dims ) ), probs_( std::move( probs ) )
  {
    if ( dims_.empty() )
    {
      throw argument_error( "JointTable: at least one variable is required" );
    }
    std::size_t size = 1;
    for ( auto d : dims_ )
    {
      if ( d == 0 )
      {
        throw argument_error( "JointTable: variable dimension must be positive" );
      }
      size *= d;
    }
    if ( probs_.size() != size )
    {
      throw argument_error( "JointTable: expected " + std::to_string( size ) + " probabilities, got " +
                            std::to_string( probs_.size() ) );
    }
    double sum = 0.0;
    for ( auto p : probs_ )
    {
      if ( !( p >= 0.0 ) )
      {
        throw argument_error( "JointTable: probabilities must be non-negative" );
      }
      sum += p;
    }
    if ( std::abs( sum - 1.0 ) > tolerance )
    {
      throw argument_error( "JointTable: probabilities sum to " + std::to_string( sum ) + ", not 1" );
    }
  }

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t num_vars() const noexcept { return dims_.size(); }

  /// Values of every variable at a flat index.
  std::vector<std::size_t> unflatten( std::size_t index ) const
  {
    std::vector<std::size_t> values( dims_.size() );
    for ( std::size_t v = dims_.size(); v-- > 0; )
    {
      values[v] = index % dims_[v];
      index /= dims_[v];
    }
    return values;
  }

  std::size_t flatten( std::span<const std::size_t> values ) const
  {
    std::size_t index = 0;
    for ( std::size_t v = 0; v < dims_.size(); ++v )
    {
      index = index * dims_[v] + values[v];
    }
    return index;
  }

  /// Replaces variable `var` by `phi(var)`, a deterministic map into [0, new_dim).
  JointTable coarse_grain( std::size_t var, const std::function<std::size_t( std::size_t )>& phi,
                           std::size_t new_dim ) const
  {
    check_var( var );
    auto dims = dims_;
    dims[var] = new_dim;
    const auto size = std::accumulate( dims.begin(), dims.end(), std::size_t{ 1 }, std::multiplies<>{} );
    std::vector<double> probs( size, 0.0 );
    for ( std::size_t i = 0; i < probs_.size(); ++i )
    {
      auto values = unflatten( i );
      values[var] = phi( values[var] );
      if ( values[var] >= new_dim )
      {
        throw domain_error( "coarse_grain: image out of range" );
      }
      std::size_t index = 0;
      for ( std::size_t v = 0; v < dims.size(); ++v )
      {
        index = index * dims[v] + values[v];
      }
      probs[index] += probs_[i];
    }
    return JointTable{ std::move( dims ), std::move( probs ) };
  }

  /// Permutes the value labels of variable `var`.
  JointTable relabel( std::size_t var, std::span<const std::size_t> perm ) const
  {
    check_var( var );
    if ( perm.size() != dims_[var] )
    {
      throw argument_error( "relabel: permutation has the wrong length" );
    }
    std::vector<double> probs( probs_.size(), 0.0 );
    for ( std::size_t i = 0; i < probs_.size(); ++i )
    {
      auto values = unflatten( i );
      values[var] = perm[values[var]];
      probs[flatten( values )] += probs_[i];
    }
    return JointTable{ dims_, std::move( probs ) };
  }

  void check_var( std::size_t var ) const
  {
    if ( var >= dims_.size() )
    {
      throw argument_error( "variable index " + std::to_string( var ) + " out of range" );
    }
  }

private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

/// I(A;B|C) where A, B and C are groups of variables of `t`. The groups must be disjoint; A and B non-empty.
inline double conditional_mutual_information( const JointTable& t, std::span<const std::size_t> a,
                                              std::span<const std::size_t> b, std::span<const std::size_t> c )
{
  if ( a.empty() || b.empty() )
  {
    throw argument_error( "conditional_mutual_information: A and B must be non-empty" );
  }
  std::vector<int> owner( t.num_vars(), -1 );
  auto claim = [&]( std::span<const std::size_t> group, int id ) {
    for ( auto v : group )
    {
      t.check_var( v );
      if ( owner[v] != -1 )
      {
        throw argument_error( "conditional_mutual_information: variable " + std::to_string( v ) +
                              " appears in more than one group" );
      }
      owner[v] = id;
    }
  };
  claim( a, 0 );
  claim( b, 1 );
  claim( c, 2 );

  const auto& dims = t.dims();
  auto group_size = [&]( std::span<const std::size_t> group ) {
    std::size_t s = 1;
    for ( auto v : group )
    {
      s *= dims[v];
    }
    return s;
  };
  auto group_index = [&]( std::span<const std::size_t> group, const std::vector<std::size_t>& values ) {
    std::size_t idx = 0;
    for ( auto v : group )
    {
      idx = idx * dims[v] + values[v];
    }
    return idx;
  };

  const auto na = group_size( a ), nb = group_size( b ), nc = group_size( c );
  std::vector<double> pabc( na * nb * nc, 0.0 ), pac( na * nc, 0.0 ), pbc( nb * nc, 0.0 ), pc( nc, 0.0 );
  const auto& probs = t.probs();
  for ( std::size_t i = 0; i < probs.size(); ++i )
  {
    if ( probs[i] == 0.0 )
    {
      continue;
    }
    auto values = t.unflatten( i );
    auto ia = group_index( a, values ), ib = group_index( b, values ), ic = group_index( c, values );
    pabc[( ia * nb + ib ) * nc + ic] += probs[i];
    pac[ia * nc + ic] += probs[i];
    pbc[ib * nc + ic] += probs[i];
    pc[ic] += probs[i];
  }

  double info = 0.0;
  for ( std::size_t ia = 0; ia < na; ++ia )
  {
    for ( std::size_t ib = 0; ib < nb; ++ib )
    {
      for ( std::size_t ic = 0; ic < nc; ++ic )
      {
        const double p = pabc[( ia * nb + ib ) * nc + ic];
        if ( p <= 0.0 )
        {
          continue;
        }
        info += p * std::log2( p * pc[ic] / ( pac[ia * nc + ic] * pbc[ib * nc + ic] ) );
      }
    }
  }
  return info;
}

inline double conditional_mutual_information( const JointTable& t, std::size_t a, std::size_t b,
                                              std::span<const std::size_t> c = {} )
{
  const std::size_t av[] = { a };
  const std::size_t bv[] = { b };
  return conditional_mutual_information( t, std::span<const std::size_t>{ av }, std::span<const std::size_t>{ bv },
                                         c );
}

inline double mutual_information( const JointTable& t, std::size_t a, std::size_t b )
{
  return conditional_mutual_information( t, a, b, {} );
}

} // namespace icbound
