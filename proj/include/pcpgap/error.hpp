#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcpgap {

// Base of every error the library raises. The CLI maps all of these to exit
// code 2; a failed gap verdict is reported through GapReport instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration or allocation would exceed a configured size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// Text input (DIMACS, regex, JSON) is malformed. `position` is a 1-based line
// number or a 0-based byte offset depending on the format.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A loaded or constructed instance breaks one of its type invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcpgap
