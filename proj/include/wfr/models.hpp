#ifndef WFR_MODELS_HPP
#define WFR_MODELS_HPP

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wfr/quadrature.hpp"

namespace wfr {

enum class Monotone { increasing, decreasing, constant, non_monotone, unknown };

const char* to_string(Monotone m) noexcept;

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Result of a numerical monotonicity scan.  change_points is empty exactly
/// when the label is increasing, decreasing or constant; otherwise it lists
/// the abscissae (strictly inside the scanned interval) where the sign of
/// the derivative flips.
struct MonotoneVerdict {
  Monotone label = Monotone::unknown;
  std::vector<double> change_points;
  std::vector<double> grid;
  std::string note;
};

/// Classifies f on [lo,hi] from central-difference signs over a uniform
/// grid.  Derivative magnitudes below 1e-9*(1+|f|) count as zero, so noise
/// cannot manufacture change points.  Change points are refined to a width
/// of (hi-lo)/1e6.
MonotoneVerdict scan_monotonicity(const std::function<double(double)>& f,
                                  double lo, double hi, int grid_size = 200);

/// Same classification for already-evaluated samples; refine_f, when given,
/// is used to sharpen change-point locations.
MonotoneVerdict scan_monotone_values(std::span<const double> grid,
                                     std::span<const double> values,
                                     const std::function<double(double)>* refine_f = nullptr);

std::vector<double> make_grid(double lo, double hi, int n);

enum class HazardFamily {
  exponential,
  weibull,
  additive_weibull,
  kies,
  pareto_one,
  marshall_olkin,
  custom,
};

/// A parametric lifetime model exposing the failure rate h(x), the
/// cumulative hazard H(x) = int_0^x h (closed form where the family has
/// one), survival exp(-H) and density h*survival.  Immutable and cheap to
/// copy; all evaluators are pure, so concurrent use is safe.
class HazardModel {
 public:
  static HazardModel exponential(double lambda);
  /// h(x) = alpha*beta*x^(beta-1); alpha is scale-like, beta the shape.
  static HazardModel weibull(double alpha, double beta);
  /// h(x) = alpha*theta*x^(theta-1) + beta*gamma*x^(gamma-1).
  static HazardModel additive_weibull(double alpha, double theta, double beta,
                                      double gamma);
  /// survival exp(-lambda*((x-a)/(b-x))^beta) on [a, b); evaluations at or
  /// beyond b clamp to b - 1e-12*(b-a).
  static HazardModel kies(double a, double b, double lambda, double beta);
  /// Quantile alpha*(1-u)^(-1/alpha); h(x) = alpha/x on [alpha, inf).
  static HazardModel pareto_one(double alpha);
  /// Tilted model with h(x) = base.h(x) / (1 - (1-tilt)*base.survival(x)).
  static HazardModel marshall_olkin(const HazardModel& base, double tilt);
  /// h(x) = theta * base.h(x).
  static HazardModel proportional(const HazardModel& base, double theta);
  static HazardModel from_function(
      std::function<double(double)> hazard, Interval support, std::string label,
      Monotone analytic = Monotone::unknown,
      std::function<double(double)> cumulative_hazard = nullptr);

  double hazard(double x) const;
  double cumulative_hazard(double x) const;
  double survival(double x) const;
  double density(double x) const;

  Interval support() const;
  HazardFamily family() const;
  /// Monotonicity known from the parameters, or unknown.
  Monotone analytic_monotonicity() const;
  const std::string& label() const;
  const std::vector<std::pair<std::string, double>>& params() const;
  double param(const std::string& name) const;
  const HazardModel* base() const;  // set for marshall_olkin / proportional

 private:
  struct Impl;
  explicit HazardModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class WeightFamily {
  constant,
  power,
  exponential,
  one_minus_exponential,
  marshall_olkin_tilt,
  kies_ratio,
  tabulated,
  custom,
};

/// Non-negative weight w(x) with cumulative W(x) = int_0^x w (closed form
/// where available, quadrature otherwise) and declared monotonicity.
class WeightFunction {
 public:
  static WeightFunction constant();
  /// w(x) = x^c, c > -1 so that W stays finite near 0.
  static WeightFunction power(double c);
  /// w(x) = exp(n*x), any real n.
  static WeightFunction exponential(double n);
  /// w(x) = 1 - exp(n*x), n < 0.
  static WeightFunction one_minus_exponential(double n);
  /// w(x) = 1 / (1 - (1-alpha)*base.survival(x)).
  static WeightFunction marshall_olkin_tilt(const HazardModel& base, double alpha);
  /// w(x) = (x-a)/(b-x) on (a,b), 0 at or below a; clamped near b.
  static WeightFunction kies_ratio(double a, double b);
  /// Piecewise-linear interpolation of non-negative samples; constant
  /// extrapolation outside the grid.
  static WeightFunction tabulated(std::vector<double> grid, std::vector<double> values);
  static WeightFunction from_function(std::function<double(double)> w,
                                      Monotone direction, std::string label);

  double operator()(double x) const;
  double cumulative(double x, const QuadratureConfig& cfg = {}) const;
  bool has_closed_form_cumulative() const;
  Monotone monotone_direction() const;
  WeightFamily family() const;
  const std::string& label() const;
  const std::vector<std::pair<std::string, double>>& params() const;
  double param(const std::string& name) const;
  const HazardModel* base() const;  // set for marshall_olkin_tilt

 private:
  struct Impl;
  explicit WeightFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Smallest x with F(x) >= p, i.e. the abscissa where the cumulative hazard
/// reaches -ln(1-p).  Throws ValidationError for defective models whose
/// cumulative hazard stays bounded below the target.
double survival_quantile(const HazardModel& m, double p);

/// Default scan window [q(0.001), q(0.999)]: the abscissae holding 99.8% of
/// the model's mass.  Monotonicity claims beyond that are numerically
/// unverifiable and excluded (the interval is always reported back).
Interval default_scan_interval(const HazardModel& m);

}  // namespace wfr

#endif  // WFR_MODELS_HPP
