#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace spanex {

// Bad input value: invalid vertex id, non-positive epsilon, edge not in the
// expected subset, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The graph does not have the shape an operation needs (e.g. disconnected).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exploration state was asked about something it does not hold,
// e.g. is_blocked on an edge that is not a boundary edge.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A brute-force routine was called above its size guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance is well-formed but the requested quantity is undefined
// (e.g. lightness when w(MST) = 0).
class DegenerateInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A runtime-checked property of the exploration or spanner failed. `property`
// names the violated statement, `witness` describes the offending object.
class InvariantViolation : public std::logic_error {
 public:
  InvariantViolation(std::string property, std::string witness)
      : std::logic_error(property + " violated: " + witness),
        property_(std::move(property)),
        witness_(std::move(witness)) {}

  const std::string& property() const noexcept { return property_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string property_;
  std::string witness_;
};

}  // namespace spanex
