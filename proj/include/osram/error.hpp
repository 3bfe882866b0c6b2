#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osram {

// Base of every error the library throws. The CLI maps the subclasses to
// its exit codes (config -> 1, input data -> 2, model invariant -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tensor text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Requested more storage than the structure can hold (synthetic nnz above
// the grid size, a tensor too large to densify).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable input files, mismatched inputs.
class InputError : public Error {
 public:
  using Error::Error;
};

// A model precondition was violated at run time (e.g. an SRAM block asked
// to serve more bits than it can in one cycle).
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace osram
