#pragma once

/*
  Command-line front end.  `run` parses an argument vector, writes the report
  to `out` and diagnostics to `err`, and returns the process exit code:

    0  success
    1  a self-check (oracle-check) failed, or an unexpected error
    2  bad arguments or unreadable input files
    3  the computation was refused (e.g. exhaustive search too large) or
       an internal consistency check failed

  Every floating-point number is printed with exactly nine decimals.
*/

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bound.hpp"
#include "boolfn.hpp"
#include "classify.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "infocalc.hpp"
#include "prbox.hpp"

namespace icbound::cli
{

using json = nlohmann::ordered_json;

inline std::string fixed9( double value )
{
  char buffer[64];
  std::snprintf( buffer, sizeof( buffer ), "%.9f", value );
  std::string s( buffer );
  if ( s == "-0.000000000" )
  {
    s = "0.000000000";
  }
  return s;
}

namespace detail
{

inline void write_json( const json& j, std::string& out, int indent )
{
  const std::string pad( static_cast<std::size_t>( indent + 2 ), ' ' );
  const std::string close_pad( static_cast<std::size_t>( indent ), ' ' );
  switch ( j.type() )
  {
  case json::value_t::object:
  {
    if ( j.empty() )
    {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for ( auto it = j.begin(); it != j.end(); ++it )
    {
      if ( !first )
      {
        out += ",\n";
      }
      first = false;
      out += pad + json( it.key() ).dump() + ": ";
      write_json( it.value(), out, indent + 2 );
    }
    out += "\n" + close_pad + "}";
    return;
  }
  case json::value_t::array:
  {
    if ( j.empty() )
    {
      out += "[]";
      return;
    }
    const bool scalars = std::all_of( j.begin(), j.end(), []( const json& e ) { return e.is_primitive(); } );
    if ( scalars )
    {
      out += "[";
      for ( std::size_t i = 0; i < j.size(); ++i )
      {
        if ( i )
        {
          out += ", ";
        }
        write_json( j[i], out, indent );
      }
      out += "]";
      return;
    }
    out += "[\n";
    for ( std::size_t i = 0; i < j.size(); ++i )
    {
      if ( i )
      {
        out += ",\n";
      }
      out += pad;
      write_json( j[i], out, indent + 2 );
    }
    out += "\n" + close_pad + "]";
    return;
  }
  case json::value_t::number_float:
    out += fixed9( j.get<double>() );
    return;
  default:
    out += j.dump();
    return;
  }
}

} // namespace detail

/// Pretty-printed JSON with floats in fixed nine-decimal notation.
inline std::string format_json( const json& j )
{
  std::string out;
  detail::write_json( j, out, 0 );
  return out + "\n";
}

inline std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw argument_error( "cannot read file '" + path + "'" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a JSON array of y indices.
inline Ordering load_ordering( std::string_view text, std::size_t y_size )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( text );
  }
  catch ( const nlohmann::json::parse_error& e )
  {
    throw parse_error( std::string( "ordering: malformed JSON: " ) + e.what(), e.byte );
  }
  if ( !j.is_array() )
  {
    throw parse_error( "ordering: expected a JSON array of y indices", 0 );
  }
  std::vector<std::size_t> perm;
  for ( std::size_t i = 0; i < j.size(); ++i )
  {
    if ( !j[i].is_number_unsigned() )
    {
      throw parse_error( "ordering: entries must be non-negative integers", i );
    }
    perm.push_back( j[i].get<std::size_t>() );
  }
  return Ordering( std::move( perm ), y_size );
}

enum class Format
{
  text,
  json,
  csv
};

/// Options shared by the subcommands that take a function.
struct FunctionSource
{
  std::string family;
  unsigned n = 0;
  unsigned k = 0;
  std::string table;

  void add_to( CLI::App& app )
  {
    app.add_option( "--family", family, "Built-in family" )
        ->check( CLI::IsMember( { "index", "ip", "disj", "eq", "kint" } ) );
    app.add_option( "--n", n, "Family input length" );
    app.add_option( "--k", k, "Intersection threshold (kint) or kint-proof ordering parameter" );
    app.add_option( "--table", table, "Truth-table JSON file" );
  }

  std::optional<FunctionFamily> to_family() const
  {
    if ( family.empty() )
    {
      return std::nullopt;
    }
    if ( family == "index" )
    {
      return FunctionFamily::index( n );
    }
    if ( family == "ip" )
    {
      return FunctionFamily::inner_product( n );
    }
    if ( family == "disj" )
    {
      return FunctionFamily::disjointness( n );
    }
    if ( family == "eq" )
    {
      return FunctionFamily::equality( n );
    }
    return FunctionFamily::k_intersect( n, k );
  }

  void require_one() const
  {
    if ( family.empty() == table.empty() )
    {
      throw argument_error( "exactly one of --family or --table is required" );
    }
  }

  BooleanFunction load() const
  {
    require_one();
    if ( auto fam = to_family() )
    {
      return build_family( *fam );
    }
    return load_truth_table( read_file( table ) );
  }

  json describe( const BooleanFunction& f ) const
  {
    json p;
    if ( !family.empty() )
    {
      p["n"] = n;
      if ( family == "kint" )
      {
        p["k"] = k;
      }
    }
    else
    {
      p["table"] = table;
    }
    p["x_size"] = f.x_size();
    p["y_size"] = f.y_size();
    return p;
  }

  std::string name() const { return family.empty() ? "table" : family; }
};

inline json channel_json( const ChannelModel& ch )
{
  json j;
  j["kind"] = ch.name();
  switch ( ch.kind )
  {
  case ChannelModel::Kind::deterministic:
    break;
  case ChannelModel::Kind::symmetric:
    j["eps"] = ch.eps_type1;
    break;
  case ChannelModel::Kind::asymmetric:
    j["eps1"] = ch.eps_type1;
    j["eps2"] = ch.eps_type2;
    break;
  }
  j["success_constraint"] = "equality";
  return j;
}

inline json bound_json( const FunctionSource& source, const BooleanFunction& f, const std::string& distribution,
                        const std::string& strategy, const BoundReport& report )
{
  json j;
  j["function"] = source.name();
  auto params = source.describe( f );
  params["distribution"] = distribution;
  j["parameters"] = params;
  j["channel"] = channel_json( report.channel );
  j["ordering"] = { { "strategy", strategy }, { "perm", report.ordering.perm() } };
  j["terms"] = report.terms;
  j["total"] = report.total;
  j["tolerance"] = tolerance;
  return j;
}

namespace detail
{

struct Options
{
  FunctionSource source;
  std::string channel = "det";
  double eps = 0.0, eps1 = 0.0, eps2 = 0.0;
  std::string ordering = "natural";
  std::string dist = "uniform";
  std::string format = "text";
  unsigned threads = 1;
  bool allow_big = false;
  std::vector<double> biases;
  std::optional<double> bias_all;
  unsigned m = 1;
  std::size_t cases = 100;
  std::uint64_t seed = 1;
  std::size_t max_size = 16;
};

inline Format parse_format( const std::string& s )
{
  return s == "json" ? Format::json : s == "csv" ? Format::csv : Format::text;
}

inline ChannelModel make_channel( const Options& o )
{
  if ( o.channel == "det" )
  {
    return ChannelModel::deterministic();
  }
  if ( o.channel == "sym" )
  {
    return ChannelModel::symmetric( o.eps );
  }
  return ChannelModel::asymmetric( o.eps1, o.eps2 );
}

inline int cmd_bound( const Options& o, std::ostream& out )
{
  const auto f = o.source.load();
  const auto channel = make_channel( o );

  InputDistribution dist = InputDistribution::uniform( f.x_size() );
  if ( o.dist.rfind( "file:", 0 ) == 0 )
  {
    dist = load_distribution( read_file( o.dist.substr( 5 ) ), f.x_size() );
  }
  else if ( o.dist != "uniform" )
  {
    throw argument_error( "--dist must be 'uniform' or 'file:PATH'" );
  }

  Ordering ordering;
  if ( o.ordering.rfind( "file:", 0 ) == 0 )
  {
    ordering = load_ordering( read_file( o.ordering.substr( 5 ) ), f.y_size() );
  }
  else
  {
    OrderingRequest request;
    request.threads = o.threads;
    request.allow_big_exhaustive = o.allow_big;
    request.k = o.source.k;
    if ( o.ordering == "natural" )
    {
      request.strategy = OrderingStrategy::natural;
    }
    else if ( o.ordering == "unit-first" )
    {
      request.strategy = OrderingStrategy::unit_vectors_first;
    }
    else if ( o.ordering == "kint-proof" )
    {
      request.strategy = OrderingStrategy::kint_proof;
      if ( request.k == 0 )
      {
        throw argument_error( "--ordering kint-proof needs --k" );
      }
    }
    else if ( o.ordering == "greedy" )
    {
      request.strategy = OrderingStrategy::greedy;
    }
    else if ( o.ordering == "exhaustive" )
    {
      request.strategy = OrderingStrategy::exhaustive;
    }
    else
    {
      throw argument_error( "unknown ordering '" + o.ordering + "'" );
    }
    ordering = make_ordering( request, f, dist, channel );
  }

  const auto report = compute_bound( f, dist, ordering, channel );
  switch ( parse_format( o.format ) )
  {
  case Format::json:
    out << format_json( bound_json( o.source, f, o.dist, o.ordering, report ) );
    break;
  case Format::csv:
    out << "step,y,term\n";
    for ( std::size_t i = 0; i < report.terms.size(); ++i )
    {
      out << i << "," << report.ordering[i] << "," << fixed9( report.terms[i] ) << "\n";
    }
    out << "total,," << fixed9( report.total ) << "\n";
    break;
  case Format::text:
    out << "function: " << o.source.name() << " (x_size " << f.x_size() << ", y_size " << f.y_size() << ")\n";
    out << "channel: " << channel.name();
    if ( channel.kind == ChannelModel::Kind::symmetric )
    {
      out << " eps=" << fixed9( channel.eps_type1 );
    }
    else if ( channel.kind == ChannelModel::Kind::asymmetric )
    {
      out << " eps1=" << fixed9( channel.eps_type1 ) << " eps2=" << fixed9( channel.eps_type2 );
    }
    out << "\ndistribution: " << o.dist << "\nordering: " << o.ordering << "\n";
    for ( std::size_t i = 0; i < report.terms.size(); ++i )
    {
      out << "  step " << i << "  y=" << report.ordering[i] << "  " << fixed9( report.terms[i] ) << "\n";
    }
    out << "total: " << fixed9( report.total ) << "\n";
    break;
  }
  return 0;
}

inline int cmd_classify( const Options& o, std::ostream& out )
{
  const auto result = census( o.threads );
  const auto checks = hierarchy_check( result );
  switch ( parse_format( o.format ) )
  {
  case Format::json:
  {
    json j;
    j["class_count"] = result.classes.size();
    j["total_functions"] = result.total_functions;
    json classes = json::array();
    for ( const auto& c : result.classes )
    {
      classes.push_back( { { "label", c.label },
                           { "count", c.count },
                           { "signature", to_string( c.signature ) },
                           { "first_member", length_two_function( c.first_member ).bits() } } );
    }
    j["classes"] = classes;
    json hierarchy = json::array();
    for ( const auto& c : checks )
    {
      hierarchy.push_back(
          { { "from", c.from }, { "to", c.to }, { "map", c.map }, { "image", c.image }, { "passed", c.passed } } );
    }
    j["hierarchy"] = hierarchy;
    out << format_json( j );
    break;
  }
  case Format::csv:
    out << "label,count,signature\n";
    for ( const auto& c : result.classes )
    {
      out << c.label << "," << c.count << ",\"" << to_string( c.signature ) << "\"\n";
    }
    break;
  case Format::text:
    out << result.classes.size() << " classes over " << result.total_functions << " functions\n";
    for ( const auto& c : result.classes )
    {
      out << "  " << c.label << "  " << c.count << "  " << to_string( c.signature ) << "\n";
    }
    for ( const auto& c : checks )
    {
      out << "  " << c.from << " -> " << c.to << " via " << c.map << ": " << ( c.passed ? "pass" : "FAIL" ) << "\n";
    }
    break;
  }
  return 0;
}

/// Coefficient of monomial `subset` as a bit string indexed by x.
inline std::string coefficient_bits( const VanDamDecomposition& d, std::size_t subset )
{
  std::string s;
  for ( std::size_t x = 0; x < d.x_size(); ++x )
  {
    s += d.coefficient( subset, x ) ? '1' : '0';
  }
  return s;
}

inline int cmd_decompose( const Options& o, std::ostream& out )
{
  const auto f = o.source.load();
  const auto d = decompose( f );
  const auto boxes = d.boxes();
  const auto local = d.local_terms();
  switch ( parse_format( o.format ) )
  {
  case Format::json:
  {
    json j;
    j["function"] = o.source.name();
    j["parameters"] = o.source.describe( f );
    j["y_bits"] = d.y_bits();
    j["message_term"] = coefficient_bits( d, 0 );
    json box_list = json::array();
    for ( auto s : boxes )
    {
      box_list.push_back( { { "monomial", d.monomial( s ) }, { "alpha", coefficient_bits( d, s ) } } );
    }
    j["boxes"] = box_list;
    json local_list = json::array();
    for ( auto s : local )
    {
      local_list.push_back( d.monomial( s ) );
    }
    j["local_terms"] = local_list;
    j["box_count"] = boxes.size();
    out << format_json( j );
    break;
  }
  case Format::csv:
    out << "kind,monomial,coefficient\n";
    out << "message,1," << coefficient_bits( d, 0 ) << "\n";
    for ( auto s : boxes )
    {
      out << "box," << d.monomial( s ) << "," << coefficient_bits( d, s ) << "\n";
    }
    for ( auto s : local )
    {
      out << "local," << d.monomial( s ) << ",\n";
    }
    break;
  case Format::text:
    out << "message term c_0(x): " << coefficient_bits( d, 0 ) << "\n";
    for ( auto s : boxes )
    {
      out << "box " << d.monomial( s ) << "  alpha(x): " << coefficient_bits( d, s ) << "\n";
    }
    for ( auto s : local )
    {
      out << "local term " << d.monomial( s ) << "\n";
    }
    out << "box count: " << boxes.size() << "\n";
    break;
  }
  return 0;
}

inline std::vector<double> resolve_biases( const Options& o, std::size_t boxes )
{
  if ( o.bias_all && !o.biases.empty() )
  {
    throw argument_error( "use either --e or --biases, not both" );
  }
  if ( o.bias_all )
  {
    return std::vector<double>( boxes, *o.bias_all );
  }
  return o.biases;
}

inline void write_pairs( Format format, std::ostream& out, const json& j )
{
  switch ( format )
  {
  case Format::json:
    out << format_json( j );
    break;
  case Format::csv:
  case Format::text:
    if ( format == Format::csv )
    {
      out << "key,value\n";
    }
    for ( auto it = j.begin(); it != j.end(); ++it )
    {
      std::string value;
      detail::write_json( it.value(), value, 0 );
      if ( format == Format::csv )
      {
        out << it.key() << ",\"" << ( it.value().is_string() ? it.value().get<std::string>() : value ) << "\"\n";
      }
      else
      {
        out << it.key() << ": " << ( it.value().is_string() ? it.value().get<std::string>() : value ) << "\n";
      }
    }
    break;
  }
}

inline int cmd_bias( const Options& o, std::ostream& out )
{
  const auto f = o.source.load();
  const auto d = decompose( f );
  const auto biases = resolve_biases( o, d.box_count() );
  const double success = success_probability( d, biases );
  double product = 1.0;
  for ( auto e : biases )
  {
    product *= e;
  }
  json j;
  j["function"] = o.source.name();
  j["box_count"] = d.box_count();
  j["biases"] = biases;
  j["success"] = success;
  j["product_formula"] = ( 1.0 + product ) / 2.0;
  write_pairs( parse_format( o.format ), out, j );
  return 0;
}

inline FunctionFamily require_family( const Options& o )
{
  if ( !o.source.table.empty() || o.source.family.empty() )
  {
    throw argument_error( "this command needs --family (truth tables are not supported)" );
  }
  return *o.source.to_family();
}

inline int cmd_violation( const Options& o, std::ostream& out )
{
  const auto family = require_family( o );
  const auto f = build_family( family );
  const auto biases = resolve_biases( o, box_count( f ) );
  const auto r = violation_check( family, biases, o.m );
  json j;
  j["function"] = family.name();
  j["n"] = family.n;
  j["box_count"] = r.box_count;
  j["success"] = r.success;
  j["outcome"] = r.signal ? ( r.violated ? "violated" : "not_violated" ) : "no_signal";
  if ( r.signal )
  {
    j["eps"] = r.eps;
  }
  j["bound"] = r.bound;
  j["m"] = r.message_bits;
  j["violated"] = r.violated;
  write_pairs( parse_format( o.format ), out, j );
  return 0;
}

inline int cmd_maxbias( const Options& o, std::ostream& out )
{
  const auto family = require_family( o );
  const auto r = max_bias( family, o.m );
  json j;
  j["function"] = family.name();
  j["n"] = family.n;
  j["m"] = o.m;
  j["effective_bias"] = r.effective_bias;
  j["constrained"] = r.constrained;
  if ( r.box_count )
  {
    j["box_count"] = *r.box_count;
  }
  if ( r.per_box_bias )
  {
    j["per_box_bias"] = *r.per_box_bias;
  }
  write_pairs( parse_format( o.format ), out, j );
  return 0;
}

inline int cmd_families( const Options& o, std::ostream& out )
{
  json list = json::array();
  list.push_back( { { "name", "index" }, { "x_size", "2^n" }, { "y_size", "n" }, { "n", "1..20" }, { "ordering", "natural" } } );
  list.push_back( { { "name", "ip" }, { "x_size", "2^n" }, { "y_size", "2^n" }, { "n", "1..14" }, { "ordering", "unit-first" } } );
  list.push_back( { { "name", "disj" }, { "x_size", "2^n" }, { "y_size", "2^n" }, { "n", "1..14" }, { "ordering", "unit-first" } } );
  list.push_back( { { "name", "eq" }, { "x_size", "2^n" }, { "y_size", "2^n" }, { "n", "1..14" }, { "ordering", "natural" } } );
  list.push_back( { { "name", "kint" },
                    { "x_size", "2^n" },
                    { "y_size", "2^n" },
                    { "n", "2..14" },
                    { "k", "1..floor(n/2)" },
                    { "ordering", "kint-proof" } } );
  switch ( parse_format( o.format ) )
  {
  case Format::json:
    out << format_json( json{ { "families", list } } );
    break;
  case Format::csv:
    out << "name,x_size,y_size,n,k,ordering\n";
    for ( const auto& e : list )
    {
      out << e["name"].get<std::string>() << "," << e["x_size"].get<std::string>() << ","
          << e["y_size"].get<std::string>() << "," << e["n"].get<std::string>() << ","
          << ( e.contains( "k" ) ? e["k"].get<std::string>() : "" ) << "," << e["ordering"].get<std::string>()
          << "\n";
    }
    break;
  case Format::text:
    for ( const auto& e : list )
    {
      out << e["name"].get<std::string>() << "  X=" << e["x_size"].get<std::string>()
          << "  Y=" << e["y_size"].get<std::string>() << "  n in " << e["n"].get<std::string>();
      if ( e.contains( "k" ) )
      {
        out << "  k in " << e["k"].get<std::string>();
      }
      out << "  standard ordering " << e["ordering"].get<std::string>() << "\n";
    }
    break;
  }
  return 0;
}

inline int cmd_oracle_check( const Options& o, std::ostream& out )
{
  if ( o.max_size < 1 || o.max_size > 64 )
  {
    throw argument_error( "--max-size must be in [1, 64]" );
  }
  const auto result = compare_with_oracle( oracle_corpus( o.cases, o.seed, o.max_size ) );
  const bool passed = result.max_deviation <= tolerance;
  json j;
  j["cases"] = result.cases;
  j["seed"] = o.seed;
  j["max_deviation"] = result.max_deviation;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  write_pairs( parse_format( o.format ), out, j );
  return passed ? 0 : 1;
}

} // namespace detail

inline int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  detail::Options o;
  CLI::App app{ "Information-causality lower bounds on one-way communication complexity", "icbound" };
  app.require_subcommand( 1 );

  auto add_format = [&]( CLI::App* cmd ) {
    cmd->add_option( "--format", o.format, "Output format" )->check( CLI::IsMember( { "text", "json", "csv" } ) );
  };
  auto add_threads = [&]( CLI::App* cmd ) {
    cmd->add_option( "--threads", o.threads, "Worker threads (0 = all cores)" );
  };

  auto* bound = app.add_subcommand( "bound", "Evaluate the lower bound for one function" );
  o.source.add_to( *bound );
  bound->add_option( "--channel", o.channel, "Guess channel" )->check( CLI::IsMember( { "det", "sym", "asym" } ) );
  bound->add_option( "--eps", o.eps, "Symmetric error rate" );
  bound->add_option( "--eps1", o.eps1, "Type-I error rate Pr[g=1|f=0]" );
  bound->add_option( "--eps2", o.eps2, "Type-II error rate Pr[g=0|f=1]" );
  bound->add_option( "--ordering", o.ordering, "natural|unit-first|kint-proof|greedy|exhaustive|file:PATH" );
  bound->add_option( "--dist", o.dist, "uniform|file:PATH" );
  bound->add_flag( "--allow-big-exhaustive", o.allow_big, "Permit exhaustive search beyond y_size 8" );
  add_format( bound );
  add_threads( bound );

  auto* classify = app.add_subcommand( "classify", "Census of the length-two equivalence classes" );
  add_format( classify );
  add_threads( classify );

  auto* prbox = app.add_subcommand( "prbox", "PR-box protocol tools" );
  prbox->require_subcommand( 1 );
  auto* decompose_cmd = prbox->add_subcommand( "decompose", "ANF over y and the induced box list" );
  o.source.add_to( *decompose_cmd );
  add_format( decompose_cmd );
  auto* bias = prbox->add_subcommand( "bias", "Exact success probability with biased boxes" );
  o.source.add_to( *bias );
  auto add_biases = [&]( CLI::App* cmd ) {
    cmd->add_option( "--e", o.bias_all, "Same bias for every box" );
    cmd->add_option( "--biases", o.biases, "One bias per box" )->delimiter( ',' );
  };
  add_biases( bias );
  add_format( bias );
  auto* violation = prbox->add_subcommand( "violation", "Does the biased protocol beat m bits?" );
  o.source.add_to( *violation );
  add_biases( violation );
  violation->add_option( "--m", o.m, "Message bits" );
  add_format( violation );
  auto* maxbias = prbox->add_subcommand( "maxbias", "Largest bias consistent with m bits" );
  o.source.add_to( *maxbias );
  maxbias->add_option( "--m", o.m, "Message bits" );
  add_format( maxbias );

  auto* families = app.add_subcommand( "families", "List built-in function families" );
  add_format( families );

  auto* oracle = app.add_subcommand( "oracle-check", "Compare the fast evaluator with the direct oracle" );
  oracle->add_option( "--cases", o.cases, "Number of random cases" );
  oracle->add_option( "--seed", o.seed, "Corpus seed" );
  oracle->add_option( "--max-size", o.max_size, "Largest x_size / y_size" );
  add_format( oracle );

  std::vector<std::string> reversed( args.rbegin(), args.rend() );
  try
  {
    app.parse( reversed );
  }
  catch ( const CLI::CallForHelp& )
  {
    out << app.help();
    return 0;
  }
  catch ( const CLI::CallForAllHelp& )
  {
    out << app.help( "", CLI::AppFormatMode::All );
    return 0;
  }
  catch ( const CLI::ParseError& e )
  {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try
  {
    if ( bound->parsed() )
    {
      return detail::cmd_bound( o, out );
    }
    if ( classify->parsed() )
    {
      return detail::cmd_classify( o, out );
    }
    if ( decompose_cmd->parsed() )
    {
      return detail::cmd_decompose( o, out );
    }
    if ( bias->parsed() )
    {
      return detail::cmd_bias( o, out );
    }
    if ( violation->parsed() )
    {
      return detail::cmd_violation( o, out );
    }
    if ( maxbias->parsed() )
    {
      return detail::cmd_maxbias( o, out );
    }
    if ( families->parsed() )
    {
      return detail::cmd_families( o, out );
    }
    if ( oracle->parsed() )
    {
      return detail::cmd_oracle_check( o, out );
    }
  }
  catch ( const argument_error& e )
  {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( const error& e )
  {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  catch ( const std::exception& e )
  {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

} // namespace icbound::cli
