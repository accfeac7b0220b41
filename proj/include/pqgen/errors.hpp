#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqgen {

/// Record violates a type invariant (bad box, empty query, duplicate id, ...).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A line of an input file could not be decoded. Carries the 1-based line
/// number and the JSON field path that failed.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

private:
  std::size_t line_;
  std::string field_;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Required template slot was not supplied to render().
class SlotMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pqgen
