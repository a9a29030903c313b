#pragma once

#include <stdexcept>
#include <string>

namespace mbm {

/// Argument outside the mathematical domain of an operation (bad dimension,
/// negative time, rho < R, ...). The CLI maps this to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer arithmetic would exceed the supported width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A result is below the smallest normal double. Callers that need the value
/// should switch to the log-scale entry points.
class UnderflowError : public std::underflow_error {
 public:
  explicit UnderflowError(const std::string& what, double log_value)
      : std::underflow_error(what), log_value_(log_value) {}

  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

/// Iterative numerics did not reach the requested agreement. Exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mbm
