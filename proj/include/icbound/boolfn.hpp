#pragma once

/*
  Distributed Boolean functions f : X x Y -> {0,1}.

  Inputs are integer indices.  When an input is a bit string
  x = x_0 x_1 ... x_{n-1}, its index is sum_i x_i 2^{n-1-i}, so x_0 is the
  most significant bit (see `string_bit`).  The truth table is stored as a
  flat bit sequence where bit x * y_size + y holds f(x, y).
*/

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "infocalc.hpp"

namespace icbound
{

/// Bit i of the n-bit string with integer index `value` (bit 0 is the most significant).
constexpr bool string_bit( std::uint64_t value, unsigned i, unsigned n ) noexcept
{
  return ( value >> ( n - 1 - i ) ) & 1u;
}

/// Integer index of the string whose only set bit is position i.
constexpr std::uint64_t unit_string( unsigned i, unsigned n ) noexcept
{
  return std::uint64_t{ 1 } << ( n - 1 - i );
}

/// Largest truth table the library will allocate (bits).
inline constexpr std::size_t max_table_bits = std::size_t{ 1 } << 32;

class BooleanFunction
{
public:
  BooleanFunction( std::size_t x_size, std::size_t y_size ) : x_size_( x_size ), y_size_( y_size )
  {
    if ( x_size == 0 || y_size == 0 )
    {
      throw argument_error( "BooleanFunction: x_size and y_size must be positive" );
    }
    if ( x_size > max_table_bits / y_size )
    {
      throw argument_error( "BooleanFunction: truth table too large" );
    }
    words_.assign( ( x_size * y_size + 63 ) / 64, 0 );
  }

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  std::size_t num_bits() const noexcept { return x_size_ * y_size_; }

  bool operator()( std::size_t x, std::size_t y ) const noexcept { return bit( x * y_size_ + y ); }

  bool bit( std::size_t index ) const noexcept { return ( words_[index >> 6] >> ( index & 63 ) ) & 1u; }

  void set( std::size_t x, std::size_t y, bool value ) noexcept
  {
    const auto index = x * y_size_ + y;
    const auto mask = std::uint64_t{ 1 } << ( index & 63 );
    if ( value )
    {
      words_[index >> 6] |= mask;
    }
    else
    {
      words_[index >> 6] &= ~mask;
    }
  }

  /// The table as a '0'/'1' string in storage order.
  std::string bits() const
  {
    std::string s( num_bits(), '0' );
    for ( std::size_t i = 0; i < s.size(); ++i )
    {
      if ( bit( i ) )
      {
        s[i] = '1';
      }
    }
    return s;
  }

  /// Column f(., y) packed as x_size bits, x-th bit at word x/64.
  std::vector<std::uint64_t> column( std::size_t y ) const
  {
    std::vector<std::uint64_t> col( ( x_size_ + 63 ) / 64, 0 );
    for ( std::size_t x = 0; x < x_size_; ++x )
    {
      if ( ( *this )( x, y ) )
      {
        col[x >> 6] |= std::uint64_t{ 1 } << ( x & 63 );
      }
    }
    return col;
  }

  /// All columns at once; cheaper than y_size calls to `column` on large tables.
  std::vector<std::vector<std::uint64_t>> columns() const
  {
    std::vector<std::vector<std::uint64_t>> cols( y_size_, std::vector<std::uint64_t>( ( x_size_ + 63 ) / 64, 0 ) );
    std::size_t index = 0;
    for ( std::size_t x = 0; x < x_size_; ++x )
    {
      const auto mask = std::uint64_t{ 1 } << ( x & 63 );
      for ( std::size_t y = 0; y < y_size_; ++y, ++index )
      {
        if ( bit( index ) )
        {
          cols[y][x >> 6] |= mask;
        }
      }
    }
    return cols;
  }

  bool operator==( const BooleanFunction& ) const = default;

private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<std::uint64_t> words_;
};

struct FunctionFamily
{
  enum class Kind
  {
    index,
    inner_product,
    disjointness,
    equality,
    k_intersect
  };

  Kind kind;
  unsigned n;
  unsigned k = 0;

  static FunctionFamily index( unsigned n ) { return { Kind::index, n }; }
  static FunctionFamily inner_product( unsigned n ) { return { Kind::inner_product, n }; }
  static FunctionFamily disjointness( unsigned n ) { return { Kind::disjointness, n }; }
  static FunctionFamily equality( unsigned n ) { return { Kind::equality, n }; }
  static FunctionFamily k_intersect( unsigned n, unsigned k ) { return { Kind::k_intersect, n, k }; }

  /// Throws invalid_family_error unless the parameters are in range.
  void validate() const
  {
    if ( n < 1 )
    {
      throw invalid_family_error( name() + ": n must be at least 1" );
    }
    const unsigned max_n = kind == Kind::index ? 20u : 14u;
    if ( n > max_n )
    {
      throw invalid_family_error( name() + ": n = " + std::to_string( n ) + " exceeds the supported maximum " +
                                  std::to_string( max_n ) );
    }
    if ( kind == Kind::k_intersect && ( k < 1 || k > n / 2 ) )
    {
      throw invalid_family_error( "kint: k = " + std::to_string( k ) + " must satisfy 1 <= k <= floor(n/2) = " +
                                  std::to_string( n / 2 ) );
    }
  }

  std::size_t x_size() const { return std::size_t{ 1 } << n; }
  std::size_t y_size() const { return kind == Kind::index ? n : std::size_t{ 1 } << n; }

  std::string name() const
  {
    switch ( kind )
    {
    case Kind::index:
      return "index";
    case Kind::inner_product:
      return "ip";
    case Kind::disjointness:
      return "disj";
    case Kind::equality:
      return "eq";
    case Kind::k_intersect:
      return "kint";
    }
    return "unknown";
  }

  bool operator==( const FunctionFamily& ) const = default;
};

namespace detail
{

template<typename Rule>
BooleanFunction tabulate( std::size_t x_size, std::size_t y_size, Rule rule )
{
  BooleanFunction f( x_size, y_size );
  for ( std::size_t x = 0; x < x_size; ++x )
  {
    for ( std::size_t y = 0; y < y_size; ++y )
    {
      if ( rule( x, y ) )
      {
        f.set( x, y, true );
      }
    }
  }
  return f;
}

} // namespace detail

inline BooleanFunction build_family( const FunctionFamily& family )
{
  family.validate();
  using Kind = FunctionFamily::Kind;
  const auto n = family.n;
  const auto k = family.k;
  const auto xs = family.x_size(), ys = family.y_size();
  switch ( family.kind )
  {
  case Kind::index:
    return detail::tabulate( xs, ys, [n]( std::size_t x, std::size_t y ) {
      return string_bit( x, static_cast<unsigned>( y ), n );
    } );
  case Kind::inner_product:
    return detail::tabulate( xs, ys, []( std::size_t x, std::size_t y ) { return ( std::popcount( x & y ) & 1 ) != 0; } );
  case Kind::disjointness:
    return detail::tabulate( xs, ys, []( std::size_t x, std::size_t y ) { return ( x & y ) == 0; } );
  case Kind::equality:
    return detail::tabulate( xs, ys, []( std::size_t x, std::size_t y ) { return x == y; } );
  case Kind::k_intersect:
    return detail::tabulate( xs, ys, [k]( std::size_t x, std::size_t y ) {
      return static_cast<unsigned>( std::popcount( x & y ) ) >= k;
    } );
  }
  throw invalid_family_error( "unknown family" );
}

/// result(x, y) = f(sigma[x], y).
inline BooleanFunction apply_x_substitution( const BooleanFunction& f, std::span<const std::size_t> sigma )
{
  if ( sigma.size() != f.x_size() )
  {
    throw domain_error( "apply_x_substitution: sigma must be defined on all " + std::to_string( f.x_size() ) +
                        " inputs, got " + std::to_string( sigma.size() ) );
  }
  BooleanFunction result( f.x_size(), f.y_size() );
  for ( std::size_t x = 0; x < f.x_size(); ++x )
  {
    if ( sigma[x] >= f.x_size() )
    {
      throw domain_error( "apply_x_substitution: sigma(" + std::to_string( x ) + ") = " + std::to_string( sigma[x] ) +
                          " is out of range" );
    }
    for ( std::size_t y = 0; y < f.y_size(); ++y )
    {
      result.set( x, y, f( sigma[x], y ) );
    }
  }
  return result;
}

/// result(x, y) = f(x, perm[y]).
inline BooleanFunction permute_y( const BooleanFunction& f, std::span<const std::size_t> perm )
{
  if ( perm.size() != f.y_size() )
  {
    throw argument_error( "permute_y: permutation has the wrong length" );
  }
  BooleanFunction result( f.x_size(), f.y_size() );
  for ( std::size_t x = 0; x < f.x_size(); ++x )
  {
    for ( std::size_t y = 0; y < f.y_size(); ++y )
    {
      result.set( x, y, f( x, perm[y] ) );
    }
  }
  return result;
}

/// result(x, y) = f(x, y) xor flips[y].
inline BooleanFunction flip_outputs( const BooleanFunction& f, std::span<const bool> flips )
{
  if ( flips.size() != f.y_size() )
  {
    throw argument_error( "flip_outputs: expected one flag per y" );
  }
  BooleanFunction result( f.x_size(), f.y_size() );
  for ( std::size_t x = 0; x < f.x_size(); ++x )
  {
    for ( std::size_t y = 0; y < f.y_size(); ++y )
    {
      result.set( x, y, f( x, y ) != flips[y] );
    }
  }
  return result;
}

class InputDistribution
{
public:
  static InputDistribution uniform( std::size_t size )
  {
    if ( size == 0 )
    {
      throw argument_error( "InputDistribution: size must be positive" );
    }
    return InputDistribution( std::vector<double>( size, 1.0 / static_cast<double>( size ) ), true );
  }

  /// Normalises `weights`; every weight must be finite and non-negative with a positive sum.
  static InputDistribution from_weights( std::vector<double> weights )
  {
    if ( weights.empty() )
    {
      throw argument_error( "InputDistribution: no weights" );
    }
    double sum = 0.0;
    for ( std::size_t i = 0; i < weights.size(); ++i )
    {
      if ( !std::isfinite( weights[i] ) || weights[i] < 0.0 )
      {
        throw argument_error( "InputDistribution: weight " + std::to_string( i ) + " is negative or not finite" );
      }
      sum += weights[i];
    }
    if ( !( sum > 0.0 ) )
    {
      throw argument_error( "InputDistribution: weights must have a positive sum" );
    }
    for ( auto& w : weights )
    {
      w /= sum;
    }
    return InputDistribution( std::move( weights ), false );
  }

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[]( std::size_t x ) const noexcept { return weights_[x]; }
  bool is_uniform() const noexcept { return uniform_; }

  /// Short description used in reports.
  std::string descriptor() const { return uniform_ ? "uniform" : "custom"; }

private:
  InputDistribution( std::vector<double> weights, bool uniform ) : weights_( std::move( weights ) ), uniform_( uniform )
  {
  }

  std::vector<double> weights_;
  bool uniform_;
};

/* file formats */

inline std::string save_truth_table( const BooleanFunction& f )
{
  nlohmann::ordered_json j;
  j["x_size"] = f.x_size();
  j["y_size"] = f.y_size();
  j["bits"] = f.bits();
  return j.dump();
}

/// Parses {"x_size": int, "y_size": int, "bits": "0101..."}.
inline BooleanFunction load_truth_table( std::string_view text )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( text );
  }
  catch ( const nlohmann::json::parse_error& e )
  {
    throw parse_error( std::string( "truth table: malformed JSON: " ) + e.what(), e.byte );
  }
  if ( !j.is_object() )
  {
    throw parse_error( "truth table: expected a JSON object", 0 );
  }
  auto size_field = [&]( const char* key ) -> std::size_t {
    if ( !j.contains( key ) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 1 )
    {
      throw parse_error( std::string( "truth table: \"" ) + key + "\" must be a positive integer", 0 );
    }
    return j[key].get<std::size_t>();
  };
  const auto x_size = size_field( "x_size" );
  const auto y_size = size_field( "y_size" );
  if ( !j.contains( "bits" ) || !j["bits"].is_string() )
  {
    throw parse_error( "truth table: \"bits\" must be a string", 0 );
  }
  const auto& bits = j["bits"].get_ref<const std::string&>();
  if ( x_size > max_table_bits / y_size )
  {
    throw parse_error( "truth table: x_size * y_size is too large", 0 );
  }
  if ( bits.size() != x_size * y_size )
  {
    throw parse_error( "truth table: bits length " + std::to_string( bits.size() ) +
                           " != x_size * y_size = " + std::to_string( x_size * y_size ),
                       std::min( bits.size(), x_size * y_size ) );
  }
  BooleanFunction f( x_size, y_size );
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    if ( bits[i] != '0' && bits[i] != '1' )
    {
      throw parse_error( std::string( "truth table: non-binary character '" ) + bits[i] + "' in bits", i );
    }
    f.set( i / y_size, i % y_size, bits[i] == '1' );
  }
  return f;
}

/// Parses a JSON array of `x_size` non-negative numbers and normalises it.
inline InputDistribution load_distribution( std::string_view text, std::size_t x_size )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( text );
  }
  catch ( const nlohmann::json::parse_error& e )
  {
    throw parse_error( std::string( "distribution: malformed JSON: " ) + e.what(), e.byte );
  }
  if ( !j.is_array() )
  {
    throw parse_error( "distribution: expected a JSON array", 0 );
  }
  if ( j.size() != x_size )
  {
    throw parse_error( "distribution: expected " + std::to_string( x_size ) + " weights, got " +
                           std::to_string( j.size() ),
                       std::min( j.size(), x_size ) );
  }
  std::vector<double> weights;
  weights.reserve( x_size );
  for ( std::size_t i = 0; i < j.size(); ++i )
  {
    if ( !j[i].is_number() || j[i].get<double>() < 0.0 )
    {
      throw parse_error( "distribution: weight must be a non-negative number", i );
    }
    weights.push_back( j[i].get<double>() );
  }
  return InputDistribution::from_weights( std::move( weights ) );
}

} // namespace icbound
