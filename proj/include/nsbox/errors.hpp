#pragma once

#include <stdexcept>
#include <string>

namespace nsbox {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed object: missing table entry, unknown symbol, alphabet mismatch.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An operation was called on an input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A parameter lies outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation attempted in the wrong protocol state.
class StateError : public Error {
 public:
  using Error::Error;
};

// Text or file input could not be parsed. `where` names a line or field.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace nsbox
