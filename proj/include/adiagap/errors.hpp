#pragma once

#include <stdexcept>
#include <string>

namespace adiagap {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid solver or tool parameter (tolerances, grid sizes, mismatched inputs).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Oracle-only builders refuse inputs above their size cap.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Iterative method ran out of budget. Carries the last residual it saw.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

// Series summation hit its term cap. Carries the partial sum.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double partial_value)
      : std::runtime_error(what), partial_value_(partial_value) {}
  double partial_value() const noexcept { return partial_value_; }

 private:
  double partial_value_;
};

// Root search failed to find a bracket or converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data for a fit (non-positive gap, too few points).
class DataError : public std::invalid_argument {
 public:
  DataError(const std::string& what, long index)
      : std::invalid_argument(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

}  // namespace adiagap
