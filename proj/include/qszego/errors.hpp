#pragma once

#include <stdexcept>
#include <string>

namespace qszego {

/// Evaluation at a pole of a kernel or radial fraction.
struct SingularPoint : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A quadrature ran out of budget before meeting its tolerance.
struct QuadratureFailure : std::runtime_error {
  QuadratureFailure(const std::string& what, double best, double err)
      : std::runtime_error(what), best_value(best), error_estimate(err) {}
  double best_value;
  double error_estimate;
};

}  // namespace qszego
