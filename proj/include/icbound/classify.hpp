#pragma once

/*
  Equivalence classes of functions with X = Y = {0,1}^2.

  Two functions are equivalent when their bound expressions, evaluated under
  the fixed ordering y = 00, 01, 10, 11 with uniform x, coincide up to
  relabelling of the random variables and their values.  The expression is
  captured exactly, with integers only, by the sequence of non-vanishing
  steps, each step being the sorted multiset of (cell size, minority count)
  over the cells in which f(., y) is not constant.  Steps whose terms all
  vanish are dropped, since they vanish for every channel.
*/

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bound.hpp"
#include "boolfn.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace icbound
{

/// Sorted (cell size, min(ones, size - ones)) pairs of the non-constant cells at one step.
using StepSignature = std::vector<std::pair<std::size_t, std::size_t>>;
/// Non-empty steps of one ordering.
using ExpressionSignature = std::vector<StepSignature>;
using ClassSignature = ExpressionSignature;

/// Signature of the bound expression of f under `ordering` with uniform x.
inline ExpressionSignature expression_signature( const BooleanFunction& f, const Ordering& ordering )
{
  if ( ordering.size() != f.y_size() )
  {
    throw argument_error( "expression_signature: ordering size does not match y_size" );
  }
  const std::vector<double> weights( f.x_size(), 1.0 );
  PartitionState state( weights );
  ExpressionSignature signature;
  for ( auto y : ordering )
  {
    const auto column = f.column( y );
    StepSignature step;
    state.refine( column, weights, [&]( const CellVisit& v ) {
      const auto minority = std::min( v.ones, v.size - v.ones );
      if ( minority > 0 )
      {
        step.emplace_back( v.size, minority );
      }
    } );
    if ( !step.empty() )
    {
      std::sort( step.begin(), step.end() );
      signature.push_back( std::move( step ) );
    }
  }
  return signature;
}

inline void require_length_two( const BooleanFunction& f )
{
  if ( f.x_size() != 4 || f.y_size() != 4 )
  {
    throw unsupported_error( "classification supports x_size = y_size = 4 only, got " + std::to_string( f.x_size() ) +
                             " x " + std::to_string( f.y_size() ) );
  }
}

/// Class signature of a length-two function (natural ordering 00, 01, 10, 11).
inline ClassSignature signature( const BooleanFunction& f )
{
  require_length_two( f );
  return expression_signature( f, Ordering::identity( 4 ) );
}

/// Sorted expression signatures over all orderings of Y; unchanged by any permutation of Y.
inline std::vector<ExpressionSignature> orbit_signature( const BooleanFunction& f )
{
  require_length_two( f );
  std::vector<std::size_t> perm{ 0, 1, 2, 3 };
  std::vector<ExpressionSignature> all;
  do
  {
    all.push_back( expression_signature( f, Ordering( perm, 4 ) ) );
  } while ( std::next_permutation( perm.begin(), perm.end() ) );
  std::sort( all.begin(), all.end() );
  return all;
}

inline std::string to_string( const ExpressionSignature& signature )
{
  std::string s = "[";
  for ( std::size_t i = 0; i < signature.size(); ++i )
  {
    s += i ? ",[" : "[";
    for ( std::size_t j = 0; j < signature[i].size(); ++j )
    {
      s += ( j ? ",(" : "(" ) + std::to_string( signature[i][j].first ) + "," +
           std::to_string( signature[i][j].second ) + ")";
    }
    s += "]";
  }
  return s + "]";
}

/// x -> M x + c over GF(2) on strings x_0 x_1.
struct AffineXMap
{
  /// Rows of M: x'_0 = m00 x_0 + m01 x_1 + c0, x'_1 = m10 x_0 + m11 x_1 + c1.
  std::array<std::array<bool, 2>, 2> m;
  std::array<bool, 2> c;

  bool invertible() const noexcept { return ( m[0][0] && m[1][1] ) != ( m[0][1] && m[1][0] ); }

  std::size_t operator()( std::size_t x ) const noexcept
  {
    const bool x0 = string_bit( x, 0, 2 ), x1 = string_bit( x, 1, 2 );
    const bool y0 = ( ( m[0][0] && x0 ) != ( m[0][1] && x1 ) ) != c[0];
    const bool y1 = ( ( m[1][0] && x0 ) != ( m[1][1] && x1 ) ) != c[1];
    return ( std::size_t{ y0 } << 1 ) | std::size_t{ y1 };
  }

  std::vector<std::size_t> as_substitution() const
  {
    std::vector<std::size_t> sigma( 4 );
    for ( std::size_t x = 0; x < 4; ++x )
    {
      sigma[x] = ( *this )( x );
    }
    return sigma;
  }
};

/// The 24 invertible affine maps of {0,1}^2.
inline std::vector<AffineXMap> all_affine_x_maps()
{
  std::vector<AffineXMap> maps;
  for ( unsigned bits = 0; bits < 64; ++bits )
  {
    AffineXMap a{ { { { bool( bits & 1 ), bool( bits & 2 ) }, { bool( bits & 4 ), bool( bits & 8 ) } } },
                  { bool( bits & 16 ), bool( bits & 32 ) } };
    if ( a.invertible() )
    {
      maps.push_back( a );
    }
  }
  return maps;
}

/// Length-two function assembled from its per-y parts f_{y0 y1}(x0, x1).
inline BooleanFunction length_two_function( const std::array<std::function<bool( bool, bool )>, 4>& parts )
{
  BooleanFunction f( 4, 4 );
  for ( std::size_t x = 0; x < 4; ++x )
  {
    for ( std::size_t y = 0; y < 4; ++y )
    {
      f.set( x, y, parts[y]( string_bit( x, 0, 2 ), string_bit( x, 1, 2 ) ) );
    }
  }
  return f;
}

struct ClassRepresentative
{
  std::string label;
  BooleanFunction function;
};

/// One hand-built member of each of the eight classes, in order I..VIII.
inline std::vector<ClassRepresentative> class_representatives()
{
  using Part = std::function<bool( bool, bool )>;
  const Part zero = []( bool, bool ) { return false; };
  const Part a = []( bool x0, bool ) { return x0; };
  const Part b = []( bool, bool x1 ) { return x1; };
  const Part ab = []( bool x0, bool x1 ) { return x0 && x1; };
  return {
      { "I", length_two_function( { zero, zero, zero, zero } ) },
      { "II", length_two_function( { a, zero, zero, zero } ) },
      { "III", length_two_function( { ab, zero, zero, zero } ) },
      { "IV", length_two_function( { a, b, zero, zero } ) },
      { "V", length_two_function( { a, ab, zero, zero } ) },
      { "VI", length_two_function( { ab, a, zero, zero } ) },
      { "VII", length_two_function( { a, ab, b, zero } ) },
      { "VIII", length_two_function( { ab, a, b, zero } ) },
  };
}

/// Function number `code` of the 2^16 length-two functions (bit i of code is table bit i).
inline BooleanFunction length_two_function( std::uint32_t code )
{
  BooleanFunction f( 4, 4 );
  for ( std::size_t i = 0; i < 16; ++i )
  {
    f.set( i / 4, i % 4, ( code >> i ) & 1u );
  }
  return f;
}

struct ClassEntry
{
  std::string label;
  ClassSignature signature;
  std::size_t count;
  /// Smallest function code in the class.
  std::uint32_t first_member;
};

struct Census
{
  std::vector<ClassEntry> classes;
  std::size_t total_functions = 0;

  /// Label of the class with this signature, or empty.
  std::string label_of( const ClassSignature& sig ) const
  {
    for ( const auto& entry : classes )
    {
      if ( entry.signature == sig )
      {
        return entry.label;
      }
    }
    return {};
  }
};

inline constexpr std::size_t expected_class_count = 8;

/// Groups all 2^16 functions by signature and labels the groups I..VIII.
inline Census census( unsigned threads = 1 )
{
  constexpr std::uint32_t count = 1u << 16;
  std::vector<ClassSignature> signatures( count );
  constexpr std::size_t chunk = 1024;
  parallel_for( count / chunk, threads, [&]( std::size_t c ) {
    for ( auto code = static_cast<std::uint32_t>( c * chunk ); code < ( c + 1 ) * chunk; ++code )
    {
      signatures[code] = signature( length_two_function( code ) );
    }
  } );

  std::map<ClassSignature, ClassEntry> groups;
  for ( std::uint32_t code = 0; code < count; ++code )
  {
    auto [it, inserted] = groups.try_emplace( signatures[code], ClassEntry{ {}, signatures[code], 0, code } );
    ++it->second.count;
  }

  Census result;
  result.total_functions = count;
  std::vector<std::string> problems;
  if ( groups.size() != expected_class_count )
  {
    problems.push_back( "found " + std::to_string( groups.size() ) + " classes, expected " +
                        std::to_string( expected_class_count ) );
  }
  for ( const auto& rep : class_representatives() )
  {
    const auto sig = signature( rep.function );
    auto it = groups.find( sig );
    if ( it == groups.end() )
    {
      problems.push_back( "representative of class " + rep.label + " has unseen signature " + to_string( sig ) );
      continue;
    }
    if ( !it->second.label.empty() )
    {
      problems.push_back( "classes " + it->second.label + " and " + rep.label + " share signature " + to_string( sig ) );
      continue;
    }
    it->second.label = rep.label;
    result.classes.push_back( it->second );
  }
  for ( const auto& [sig, entry] : groups )
  {
    if ( entry.label.empty() )
    {
      problems.push_back( "unlabelled signature " + to_string( sig ) + " (" + std::to_string( entry.count ) +
                          " functions)" );
    }
  }
  if ( !problems.empty() )
  {
    std::string what = "census mismatch:";
    for ( const auto& p : problems )
    {
      what += "\n  " + p;
    }
    throw census_mismatch_error( what );
  }
  return result;
}

struct HierarchyCheck
{
  std::string from;
  std::string to;
  std::string map;
  std::string image;
  bool passed;
};

/// Confirms the arrows II -> III and IV -> V, and that the identity keeps every representative in its class.
inline std::vector<HierarchyCheck> hierarchy_check( const Census& census )
{
  const auto reps = class_representatives();
  auto rep = [&]( const std::string& label ) -> const BooleanFunction& {
    for ( const auto& r : reps )
    {
      if ( r.label == label )
      {
        return r.function;
      }
    }
    throw argument_error( "no representative " + label );
  };
  auto substitution = [&]( const std::function<std::size_t( bool, bool )>& map ) {
    std::vector<std::size_t> sigma( 4 );
    for ( std::size_t x = 0; x < 4; ++x )
    {
      sigma[x] = map( string_bit( x, 0, 2 ), string_bit( x, 1, 2 ) );
    }
    return sigma;
  };
  const auto and_first = substitution( []( bool x0, bool x1 ) { return ( std::size_t( x0 && x1 ) << 1 ) | x1; } );
  const auto and_second = substitution( []( bool x0, bool x1 ) { return ( std::size_t( x0 ) << 1 ) | ( x0 && x1 ); } );
  const auto identity = substitution( []( bool x0, bool x1 ) { return ( std::size_t( x0 ) << 1 ) | x1; } );

  std::vector<HierarchyCheck> checks;
  auto check = [&]( const std::string& from, const std::string& to, const std::string& name,
                    const std::vector<std::size_t>& sigma ) {
    const auto image = census.label_of( signature( apply_x_substitution( rep( from ), sigma ) ) );
    checks.push_back( { from, to, name, image, image == to } );
  };
  check( "II", "III", "(x0,x1)->(x0*x1,x1)", and_first );
  check( "IV", "V", "(x0,x1)->(x0,x0*x1)", and_second );
  for ( const auto& r : reps )
  {
    check( r.label, r.label, "identity", identity );
  }

  for ( const auto& c : checks )
  {
    if ( !c.passed )
    {
      throw hierarchy_violation_error( "hierarchy violation: " + c.from + " under " + c.map + " landed in class '" +
                                       c.image + "', expected " + c.to );
    }
  }
  return checks;
}

} // namespace icbound
