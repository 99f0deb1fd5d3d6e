#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input. Column is 1-based, 0 when unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class UnknownGenerator : public Error {
public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
public:
  using Error::Error;
};

// sr_graph validation
class DisjointnessViolation : public Error {
public:
  using Error::Error;
};
class NonCompleteEComponent : public Error {
public:
  using Error::Error;
};
class MalformedEdge : public Error {
public:
  using Error::Error;
};
class HypothesisViolation : public Error {
public:
  using Error::Error;
};

/// A bounded search ran out of its node-expansion budget before finishing.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

class RedundantBasis : public Error {
public:
  using Error::Error;
};

class StructureMismatch : public Error {
public:
  using Error::Error;
};

class EmptySet : public Error {
public:
  using Error::Error;
};

class NotFoundAtBound : public Error {
public:
  using Error::Error;
};

class VariantMismatch : public Error {
public:
  using Error::Error;
};

class InsufficientElements : public Error {
public:
  using Error::Error;
};

class AmbientMismatch : public Error {
public:
  using Error::Error;
};

class HypothesisUnverified : public Error {
public:
  using Error::Error;
};

}  // namespace srkit
