#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& token, std::size_t position)
      : ParseError("unknown identifier '" + token + "'", position), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// A denominator vanished at an evaluation point or after substitution.
class PoleError : public Error {
 public:
  using Error::Error;
};

class ContextMismatchError : public Error {
 public:
  ContextMismatchError() : Error("operands belong to different phase-space contexts") {}
};

class VariableError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

/// Input is outside the class an operation supports (order, dimension, shape).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ttq
