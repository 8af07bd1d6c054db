#pragma once

#include <stdexcept>
#include <string>

namespace squeezekit {

/// A caller-supplied argument is malformed (bad index, shape mismatch, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but outside the mathematical domain
/// (|alpha| >= 1, cutoff too small for the requested squeezing, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested problem does not fit the configured memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace squeezekit
