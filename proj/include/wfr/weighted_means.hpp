#ifndef WFR_WEIGHTED_MEANS_HPP
#define WFR_WEIGHTED_MEANS_HPP

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wfr/models.hpp"
#include "wfr/quadrature.hpp"

namespace wfr {

struct EvalOptions {
  /// When true, known closed forms replace quadrature (exponential and
  /// Weibull hazards under constant / power / exponential weights).
  bool use_closed_forms = true;
  QuadratureConfig quad{};
};

/// A mean value or the undefined-divergent sentinel.  A divergent harmonic
/// mean carries value 0 (infimum convention); a divergent arithmetic mean
/// carries +inf.
struct MeanValue {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool divergent = false;

  bool finite_positive() const {
    return !divergent && std::isfinite(value) && value > 0.0;
  }
};

struct MeanTriple {
  double x = 0.0;
  MeanValue afr, gfr, hfr;
};

/// A hazard model paired with a weight function.  Derived quantities:
/// weighted hazard h^w = w*h, cumulative K(x) = int_0^x w*h, weighted
/// survival exp(-K) and weighted density h^w * exp(-K).
class WeightedModel {
 public:
  WeightedModel(HazardModel hazard, WeightFunction weight);

  const HazardModel& hazard_model() const { return hazard_; }
  const WeightFunction& weight() const { return weight_; }

  double weighted_hazard(double x) const;
  double cumulative_weight(double x, const EvalOptions& opts = {}) const;
  double cumulative_weighted_hazard(double x, const EvalOptions& opts = {}) const;
  double weighted_survival(double x, const EvalOptions& opts = {}) const;
  double weighted_density(double x, const EvalOptions& opts = {}) const;

 private:
  HazardModel hazard_;
  WeightFunction weight_;
};

/// Weighted arithmetic mean failure rate: int_0^x w h / int_0^x w.
MeanValue wafr(const WeightedModel& m, double x, const EvalOptions& opts = {});

/// Weighted geometric mean failure rate: exp(int_0^x w ln h / int_0^x w).
MeanValue wgfr(const WeightedModel& m, double x, const EvalOptions& opts = {});

/// Weighted harmonic mean failure rate: (int_0^x w) / (int_0^x w/h).
/// Divergence of int w/h maps to value 0 plus the divergence flag.
MeanValue whfr(const WeightedModel& m, double x, const EvalOptions& opts = {});

MeanTriple mean_triple(const WeightedModel& m, double x, const EvalOptions& opts = {});

/// Batch form sharing cumulative integrals across the ascending positive
/// grid (one sweep, no re-integration from zero).
std::vector<MeanTriple> mean_triple_grid(const WeightedModel& m,
                                         std::span<const double> grid,
                                         const EvalOptions& opts = {});

/// Checks of the four postulates a weighted survival function must satisfy:
/// (i) nonnegativity of w and h, (ii) finite K(x) up to the horizon,
/// (iii) K(x) -> inf (growth heuristic, reported as likely-*, never proof),
/// (iv) infinite-hazard propagation (not numerically checkable; flagged).
struct ValidityReport {
  bool nonnegative = false;
  bool finite_cumulative = false;
  bool likely_divergent_tail = false;
  bool propagation_checkable = false;  // always false; see notes
  std::vector<double> tail_values;     // K at horizon * 2^k, k = 0..6
  std::vector<std::string> notes;

  bool defective() const { return !likely_divergent_tail; }
};

ValidityReport check_validity_postulates(const WeightedModel& m, double horizon,
                                         const EvalOptions& opts = {});

}  // namespace wfr

#endif  // WFR_WEIGHTED_MEANS_HPP
