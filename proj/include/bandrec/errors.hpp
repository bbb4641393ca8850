#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bandrec {

/// Argument outside the mathematical domain of an operation (r = 0, xi >= eta, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition on sizes or data does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The maximum gap condition delta < L is violated.
class GapConditionError : public DomainError {
 public:
  GapConditionError(double delta, double threshold)
      : DomainError("maximum gap condition violated: delta = " + std::to_string(delta) +
                    " is not below the threshold L = " + std::to_string(threshold)),
        delta_(delta),
        threshold_(threshold) {}

  double delta() const noexcept { return delta_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double delta_;
  double threshold_;
};

/// An iterative solver failed to converge; carries its last iterate.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}

  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

/// A reconstruction iteration stopped contracting.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<double> update_norms)
      : std::runtime_error(what), update_norms_(std::move(update_norms)) {}

  const std::vector<double>& update_norms() const noexcept { return update_norms_; }

 private:
  std::vector<double> update_norms_;
};

/// Randomized generation exhausted its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bandrec
