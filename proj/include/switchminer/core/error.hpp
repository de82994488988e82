#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace switchminer {

// Base for every error raised by the core library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (XML, CSV, tree grammar). `location` is a line number
// for line-oriented formats and a character offset for the tree grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t location)
      : Error(what), location_(location) {}
  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

// Caller-supplied configuration is inconsistent (missing CSV column, threshold
// out of range, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A switch process tree violates the switch placement constraints.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed. Should be unreachable.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace switchminer
