#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigengame {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch between operands (or a non-square input).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input value violates a precondition (non-unit vector, zero vector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Player or node index out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Iteration limit reached before meeting the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Input matrix is numerically rank deficient.
class RankError : public Error {
 public:
  RankError(const std::string& what, std::size_t rank)
      : Error(what), numerical_rank(rank) {}
  std::size_t numerical_rank;
};

/// Invalid configuration value or combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message carries the byte or line position.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A normalization denominator fell below the guard threshold while
/// computing a ratio-form orthogonality penalty.
class SingularPenaltyError : public Error {
 public:
  SingularPenaltyError(const std::string& what, int parent)
      : Error(what), parent(parent) {}
  int parent;  // 1-based index of the offending parent vector
};

/// A retraction step collapsed to (numerically) zero length.
class DegenerateStepError : public Error {
 public:
  using Error::Error;
};

}  // namespace eigengame
