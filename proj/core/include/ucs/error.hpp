#pragma once

#include <stdexcept>
#include <string>

namespace ucs {

// Every failure raised by the library derives from Error so that callers can
// map categories onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bipartition class would be empty (m = 0 or n = 0).
class ZeroSideError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the domain of the operation.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A closed-form bound was requested outside the hypothesis under which it holds.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Exhaustive work would exceed the configured enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  MalformedHeader,
  WrongRowCount,
  WrongRowWidth,
  IllegalCharacter,
  MalformedSet,
  MalformedGrid,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}

  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

}  // namespace ucs
