#pragma once

#include <stdexcept>
#include <string>

namespace qlim {

/// Base class for all engine errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& msg = "division by zero") : Error(msg) {}
};

struct EvaluationPole : Error {
  explicit EvaluationPole(const std::string& msg) : Error(msg) {}
};

/// Raised when polynomials from incompatible ambient algebras are combined.
struct ContextMismatch : Error {
  explicit ContextMismatch(const std::string& msg) : Error(msg) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& msg) : Error(msg) {}
};

struct OrientationError : Error {
  explicit OrientationError(const std::string& msg) : Error(msg) {}
};

struct MorphismDomainError : Error {
  explicit MorphismDomainError(const std::string& msg) : Error(msg) {}
};

struct SectionsUnavailable : Error {
  explicit SectionsUnavailable(const std::string& msg = "inverse system has no sections") : Error(msg) {}
};

struct CoherenceError : Error {
  explicit CoherenceError(const std::string& msg) : Error(msg) {}
};

struct NotARepresentation : Error {
  explicit NotARepresentation(const std::string& msg) : Error(msg) {}
};

/// Parse errors carry a 1-based column of the offending token.
struct ParseError : Error {
  int column;
  ParseError(const std::string& msg, int col)
      : Error(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

struct NameError : Error {
  int column;
  NameError(const std::string& msg, int col = 0)
      : Error(col > 0 ? msg + " (column " + std::to_string(col) + ")" : msg), column(col) {}
};

}  // namespace qlim
