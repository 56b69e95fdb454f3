#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace besov {

/// Violated precondition of a public operation (bad parameters, ordering of
/// smoothness indices, mismatched sizes, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element was handed to a space of a different element kind or shape.
class KindMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A pseudo-norm or sequence norm left the finite floating-point range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An input was outside the ball on which a map is defined.
class BallViolation : public PreconditionError {
 public:
  BallViolation(double norm, double radius)
      : PreconditionError("input outside ball: norm " + std::to_string(norm) +
                          " >= radius " + std::to_string(radius)),
        norm_(norm),
        radius_(radius) {}
  double norm() const { return norm_; }
  double radius() const { return radius_; }

 private:
  double norm_;
  double radius_;
};

/// Final time too close to (or past) the shock time of a Burgers datum.
class ShockMarginError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Characteristic root finding failed at a grid node.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t node, double time, double residual)
      : std::runtime_error("characteristic solve failed at node " + std::to_string(node) +
                           ", t = " + std::to_string(time) +
                           ", residual = " + std::to_string(residual)),
        node_(node),
        time_(time) {}
  std::size_t node() const { return node_; }
  double time() const { return time_; }

 private:
  std::size_t node_;
  double time_;
};

/// Malformed file contents (bad magic, truncated data, unparsable CSV).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace besov
