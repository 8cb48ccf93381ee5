#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icbound
{

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: size mismatches, overlapping variables, out-of-range values.
class argument_error : public error
{
public:
  using error::error;
};

class domain_error : public argument_error
{
public:
  using argument_error::argument_error;
};

class invalid_family_error : public argument_error
{
public:
  using argument_error::argument_error;
};

class unsupported_error : public argument_error
{
public:
  using argument_error::argument_error;
};

/// Malformed file content. `offset()` is the character (or element) position of the problem.
class parse_error : public argument_error
{
public:
  parse_error( const std::string& what, std::size_t offset )
      : argument_error( what + " (at offset " + std::to_string( offset ) + ")" ), offset_( offset )
  {
  }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// A computation the library declines to run, e.g. an exhaustive search that is too large.
class refusal_error : public error
{
public:
  using error::error;
};

class census_mismatch_error : public error
{
public:
  using error::error;
};

class hierarchy_violation_error : public error
{
public:
  using error::error;
};

} // namespace icbound
