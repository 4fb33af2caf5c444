#pragma once

#include <stdexcept>
#include <string>

namespace fudist {

/// Operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter lies outside the documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix violates a structural invariant (Hermiticity, trace, positivity, unitarity).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative routine hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fudist
