#pragma once

/*
  Van Dam protocols built from PR boxes.

  With x fixed, f(x, .) has an algebraic normal form over Bob's input bits:

      f(x, y) = c_0(x) xor  XOR_{S != 0} y^S c_S(x),     y^S = prod_{i in S} y_i.

  Each monomial with a non-constant coefficient is computed by one
  non-local AND: the box takes alpha = c_S(x) on Alice's side and
  beta = y^S on Bob's side and returns a, b with a xor b = alpha beta.
  Alice sends M = c_0(x) xor XOR a_i, Bob outputs g = M xor XOR b_i xor
  (the monomials whose coefficient is the constant 1, which he can compute
  himself).  A box with bias e satisfies Pr[a xor b = alpha beta] = (1+e)/2,
  so g is correct exactly when an even number of boxes err.

  Subsets S are encoded as masks in the same bit layout as y, so y^S = 1
  iff (y & S) == S.
*/

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bound.hpp"
#include "boolfn.hpp"
#include "error.hpp"
#include "infocalc.hpp"

namespace icbound
{

class VanDamDecomposition
{
public:
  VanDamDecomposition( std::size_t x_size, unsigned y_bits )
      : x_size_( x_size ), y_bits_( y_bits ),
        coefficients_( std::size_t{ 1 } << y_bits, std::vector<bool>( x_size, false ) )
  {
  }

  std::size_t x_size() const noexcept { return x_size_; }
  unsigned y_bits() const noexcept { return y_bits_; }
  std::size_t num_monomials() const noexcept { return coefficients_.size(); }

  /// c_S(x).
  bool coefficient( std::size_t subset, std::size_t x ) const { return coefficients_[subset][x]; }
  const std::vector<bool>& coefficient( std::size_t subset ) const { return coefficients_[subset]; }
  void set_coefficient( std::size_t subset, std::size_t x, bool value ) { coefficients_[subset][x] = value; }

  /// c_0, folded into Alice's message.
  const std::vector<bool>& message_term() const { return coefficients_[0]; }

  /// Non-empty subsets whose coefficient varies with x; one box each.
  std::vector<std::size_t> boxes() const
  {
    std::vector<std::size_t> result;
    for ( std::size_t s = 1; s < coefficients_.size(); ++s )
    {
      if ( !is_constant( s ) )
      {
        result.push_back( s );
      }
    }
    return result;
  }

  /// Non-empty subsets whose coefficient is identically one; Bob adds these locally.
  std::vector<std::size_t> local_terms() const
  {
    std::vector<std::size_t> result;
    for ( std::size_t s = 1; s < coefficients_.size(); ++s )
    {
      if ( is_constant( s ) && coefficients_[s][0] )
      {
        result.push_back( s );
      }
    }
    return result;
  }

  std::size_t box_count() const { return boxes().size(); }

  /// Evaluates the expansion at (x, y).
  bool evaluate( std::size_t x, std::size_t y ) const
  {
    bool value = false;
    for ( std::size_t s = 0; s < coefficients_.size(); ++s )
    {
      if ( ( y & s ) == s && coefficients_[s][x] )
      {
        value = !value;
      }
    }
    return value;
  }

  /// Monomial of a subset as text, e.g. "y0y1"; the empty monomial is "1".
  std::string monomial( std::size_t subset ) const
  {
    if ( subset == 0 )
    {
      return "1";
    }
    std::string s;
    for ( unsigned i = 0; i < y_bits_; ++i )
    {
      if ( string_bit( subset, i, y_bits_ ) )
      {
        s += "y" + std::to_string( i );
      }
    }
    return s;
  }

private:
  bool is_constant( std::size_t subset ) const
  {
    const auto& c = coefficients_[subset];
    for ( std::size_t x = 1; x < c.size(); ++x )
    {
      if ( c[x] != c[0] )
      {
        return false;
      }
    }
    return true;
  }

  std::size_t x_size_;
  unsigned y_bits_;
  std::vector<std::vector<bool>> coefficients_;
};

/// ANF of f over Bob's input bits, for every x (Moebius transform).
inline VanDamDecomposition decompose( const BooleanFunction& f )
{
  const auto bits = input_bits( f.y_size() );
  if ( !bits )
  {
    throw unsupported_error( "decompose: y_size = " + std::to_string( f.y_size() ) + " is not a power of two" );
  }
  VanDamDecomposition d( f.x_size(), *bits );
  std::vector<std::uint8_t> anf( f.y_size() );
  for ( std::size_t x = 0; x < f.x_size(); ++x )
  {
    for ( std::size_t y = 0; y < f.y_size(); ++y )
    {
      anf[y] = f( x, y );
    }
    for ( std::size_t step = 1; step < anf.size(); step <<= 1 )
    {
      for ( std::size_t y = 0; y < anf.size(); ++y )
      {
        if ( y & step )
        {
          anf[y] ^= anf[y ^ step];
        }
      }
    }
    for ( std::size_t s = 0; s < anf.size(); ++s )
    {
      d.set_coefficient( s, x, anf[s] );
    }
  }
  return d;
}

inline std::size_t box_count( const BooleanFunction& f )
{
  return decompose( f ).box_count();
}

inline void check_biases( const VanDamDecomposition& d, std::span<const double> biases )
{
  if ( biases.size() != d.box_count() )
  {
    throw argument_error( "expected " + std::to_string( d.box_count() ) + " box biases, got " +
                          std::to_string( biases.size() ) );
  }
  for ( auto e : biases )
  {
    if ( !( e >= -1.0 && e <= 1.0 ) )
    {
      throw argument_error( "box bias " + std::to_string( e ) + " is outside [-1, 1]" );
    }
  }
  if ( biases.size() > 24 )
  {
    throw argument_error( "too many boxes to enumerate error patterns" );
  }
}

/// Pr[g = f(x, y)], by enumerating every pattern of box errors. Independent of (x, y).
inline double success_probability( const VanDamDecomposition& d, std::span<const double> biases )
{
  check_biases( d, biases );
  const auto boxes = biases.size();
  double success = 0.0;
  for ( std::uint32_t pattern = 0; pattern < ( 1u << boxes ); ++pattern )
  {
    double p = 1.0;
    for ( std::size_t i = 0; i < boxes; ++i )
    {
      const double err = ( 1.0 - biases[i] ) / 2.0;
      p *= ( ( pattern >> i ) & 1u ) ? err : 1.0 - err;
    }
    if ( std::popcount( pattern ) % 2 == 0 )
    {
      success += p;
    }
  }
  return success;
}

/// Bob's guess for one run of the protocol. a[i] is Alice's output of box i, errors[i] flips a xor b.
inline bool protocol_guess( const VanDamDecomposition& d, std::size_t x, std::size_t y, const std::vector<bool>& a,
                            const std::vector<bool>& errors )
{
  const auto boxes = d.boxes();
  bool message = d.message_term()[x];
  bool guess_local = false;
  for ( std::size_t i = 0; i < boxes.size(); ++i )
  {
    const bool alpha = d.coefficient( boxes[i], x );
    const bool beta = ( y & boxes[i] ) == boxes[i];
    const bool b = ( ( alpha && beta ) != errors[i] ) != a[i];
    message = message != a[i];
    guess_local = guess_local != b;
  }
  for ( auto s : d.local_terms() )
  {
    if ( ( y & s ) == s )
    {
      guess_local = !guess_local;
    }
  }
  return message != guess_local;
}

/// Exact success probability at one input pair, by running the protocol on every error pattern.
inline double success_probability_at( const BooleanFunction& f, const VanDamDecomposition& d,
                                      std::span<const double> biases, std::size_t x, std::size_t y )
{
  check_biases( d, biases );
  const auto boxes = biases.size();
  const std::vector<bool> a( boxes, false );
  double success = 0.0;
  for ( std::uint32_t pattern = 0; pattern < ( 1u << boxes ); ++pattern )
  {
    std::vector<bool> errors( boxes );
    double p = 1.0;
    for ( std::size_t i = 0; i < boxes; ++i )
    {
      errors[i] = ( pattern >> i ) & 1u;
      const double err = ( 1.0 - biases[i] ) / 2.0;
      p *= errors[i] ? err : 1.0 - err;
    }
    if ( protocol_guess( d, x, y, a, errors ) == f( x, y ) )
    {
      success += p;
    }
  }
  return success;
}

/// Monte Carlo estimate of the success rate over uniformly random inputs and box outputs.
template<typename Rng>
double sample_success( const BooleanFunction& f, const VanDamDecomposition& d, std::span<const double> biases,
                       std::size_t trials, Rng& rng )
{
  check_biases( d, biases );
  std::uniform_int_distribution<std::size_t> pick_x( 0, f.x_size() - 1 ), pick_y( 0, f.y_size() - 1 );
  std::bernoulli_distribution coin( 0.5 );
  std::vector<std::bernoulli_distribution> fail;
  for ( auto e : biases )
  {
    fail.emplace_back( ( 1.0 - e ) / 2.0 );
  }
  std::size_t hits = 0;
  for ( std::size_t t = 0; t < trials; ++t )
  {
    const auto x = pick_x( rng ), y = pick_y( rng );
    std::vector<bool> a( biases.size() ), errors( biases.size() );
    for ( std::size_t i = 0; i < biases.size(); ++i )
    {
      a[i] = coin( rng );
      errors[i] = fail[i]( rng );
    }
    if ( protocol_guess( d, x, y, a, errors ) == f( x, y ) )
    {
      ++hits;
    }
  }
  return static_cast<double>( hits ) / static_cast<double>( trials );
}

struct ViolationReport
{
  std::size_t box_count;
  double success;
  /// 1 - success; meaningful only when signal is true.
  double eps;
  double bound;
  unsigned message_bits;
  /// False when success <= 1/2, i.e. the protocol carries no information.
  bool signal;
  bool violated;
};

/// Evaluates the family's bound at the error rate achieved by its PR-box protocol and compares it with m.
inline ViolationReport violation_check( const FunctionFamily& family, std::span<const double> biases,
                                        unsigned message_bits )
{
  if ( message_bits < 1 )
  {
    throw argument_error( "violation_check: m must be at least 1" );
  }
  const auto f = build_family( family );
  const auto d = decompose( f );
  ViolationReport report{ d.box_count(), success_probability( d, biases ), 0.5, 0.0, message_bits, false, false };
  report.eps = 1.0 - report.success;
  if ( !( report.eps < 0.5 ) )
  {
    return report;
  }
  report.signal = true;
  report.bound = compute_bound( f, InputDistribution::uniform( f.x_size() ), standard_ordering( family ),
                                ChannelModel::symmetric( report.eps ) )
                     .total;
  report.violated = report.bound > static_cast<double>( message_bits ) + tolerance;
  return report;
}

struct MaxBiasReport
{
  /// Largest protocol bias E = prod e_i with bound((1 - E)/2) <= m.
  double effective_bias;
  /// E^(1/B) when the family decomposes into B > 0 boxes of equal bias.
  std::optional<double> per_box_bias;
  std::optional<std::size_t> box_count;
  /// False when even perfect boxes keep the bound within m.
  bool constrained;
};

/// Bound of f with uniform x as a function of the protocol bias E (error rate (1 - E)/2).
inline double bound_at_bias( const BooleanFunction& f, const Ordering& ordering, double effective_bias )
{
  if ( effective_bias <= 0.0 )
  {
    return 0.0;
  }
  const double eps = ( 1.0 - std::min( effective_bias, 1.0 ) ) / 2.0;
  return compute_bound( f, InputDistribution::uniform( f.x_size() ), ordering, ChannelModel::symmetric( eps ) ).total;
}

/// Largest protocol bias in [0, 1] keeping the bound within m, by bisection to 1e-9.
inline double max_effective_bias( const BooleanFunction& f, const Ordering& ordering, unsigned message_bits )
{
  const double m = message_bits;
  if ( bound_at_bias( f, ordering, 1.0 ) <= m + tolerance )
  {
    return 1.0;
  }
  double lo = 0.0, hi = 1.0;
  while ( hi - lo > tolerance )
  {
    const double mid = 0.5 * ( lo + hi );
    if ( bound_at_bias( f, ordering, mid ) <= m )
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return lo;
}

inline MaxBiasReport max_bias( const FunctionFamily& family, unsigned message_bits )
{
  if ( message_bits < 1 )
  {
    throw argument_error( "max_bias: m must be at least 1" );
  }
  const auto f = build_family( family );
  MaxBiasReport report{ max_effective_bias( f, standard_ordering( family ), message_bits ), std::nullopt, std::nullopt,
                        true };
  report.constrained = report.effective_bias < 1.0;
  if ( input_bits( f.y_size() ) )
  {
    const auto boxes = box_count( f );
    report.box_count = boxes;
    if ( boxes > 0 )
    {
      report.per_box_bias = std::pow( report.effective_bias, 1.0 / static_cast<double>( boxes ) );
    }
  }
  return report;
}

} // namespace icbound
