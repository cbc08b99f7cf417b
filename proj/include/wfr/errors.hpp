#ifndef WFR_ERRORS_HPP
#define WFR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wfr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters or preconditions; the message names the
/// violated constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme (series, continued fraction) failed to converge
/// within its iteration cap.
class ComputationError : public Error {
 public:
  using Error::Error;
};

/// Quadrature could not reach the requested tolerance; carries the best
/// estimate obtained so far.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, double best_estimate,
                double error_estimate)
      : Error(msg), best_estimate(best_estimate),
        error_estimate(error_estimate) {}

  double best_estimate;
  double error_estimate;
};

/// A function evaluated to a non-finite value where a finite one is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate input for an otherwise well-posed operation (zero cumulative
/// weight, hazard identically zero on a subinterval, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace wfr

#endif  // WFR_ERRORS_HPP
