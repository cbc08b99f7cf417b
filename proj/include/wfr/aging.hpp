#ifndef WFR_AGING_HPP
#define WFR_AGING_HPP

#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wfr/models.hpp"
#include "wfr/weighted_means.hpp"

namespace wfr {

enum class AgingClass { IFR, DFR, IwAFR, DwAFR, IwGFR, DwGFR, IwHFR, DwHFR };

const char* to_string(AgingClass c) noexcept;

/// Evidence-based aging classification on a finite interval.  Never a
/// proof: the scanned interval and grid are always part of the report.
/// Labels: IFR/DFR from the base hazard, Iw-/Dw- classes from the weighted
/// means; a verdict of "constant" grants both directions.  Divergent means
/// are excluded from labeling (see notes).
struct AgingReport {
  MonotoneVerdict hazard;           // base h
  MonotoneVerdict weighted_hazard;  // h^w = w*h (failure rate of X^w)
  MonotoneVerdict afr, gfr, hfr;    // weighted means of the pair (h, w)
  MonotoneVerdict afr_of_weighted;  // plain AFR (1/t) int_0^t h^w
  std::set<AgingClass> labels;
  bool gfr_excluded = false;        // divergent, left unlabeled
  bool hfr_excluded = false;
  double lo = 0.0, hi = 0.0;
  int grid_size = 0;
  bool transmission_consistent = true;  // monotone h propagated to the means
  std::vector<std::string> notes;

  bool has(AgingClass c) const { return labels.count(c) != 0; }
};

AgingReport classify(const WeightedModel& m, double lo, double hi,
                     int grid_size = 128, const EvalOptions& opts = {});

/// classify over the default scan interval of the base hazard.
AgingReport classify(const WeightedModel& m, int grid_size = 128,
                     const EvalOptions& opts = {});

/// Violated inclusion implications among the labels (IFR down the
/// increasing chain, DFR down the decreasing one), honoring divergence
/// exclusions.  Empty means the report is chain-consistent.
std::vector<std::string> inclusion_chain_violations(const AgingReport& report);

enum class Relation { geq, leq, equal };

const char* to_string(Relation r) noexcept;

/// Outcome of one inequality check over a grid; passes when the largest
/// violation stays within 1e-8 * (1 + scale).
struct BoundReport {
  std::string id;
  Relation expected = Relation::geq;
  double max_violation = 0.0;
  double scale = 0.0;
  bool passed = true;
  bool skipped = false;
  std::string reason;
  double worst_x = 0.0;

  void record(double lhs, double rhs, double x);
  void finalize();
};

/// Sign check of (int f1 g1)(int f2 g2) - (int f1 g2)(int f2 g1) over [0,x]
/// for nonnegative integrands whose ratios f1/f2 and g1/g2 are comonotone
/// (expected geq) or antimonotone (expected leq); equal when either ratio
/// is constant.
BoundReport wijsman_inequality_check(const std::function<double(double)>& f1,
                                     const std::function<double(double)>& f2,
                                     const std::function<double(double)>& g1,
                                     const std::function<double(double)>& g2,
                                     double x, Relation expected,
                                     const QuadratureConfig& cfg = {});

/// Weighted-vs-plain mean comparisons driven by the monotone directions of
/// weight and hazard: same direction pushes each weighted mean above its
/// plain counterpart, opposite below, either constant gives equality.  The
/// geometric comparison additionally requires h >= 1 on the interval and is
/// skipped (with reason) otherwise.
std::vector<BoundReport> bound_check_means(const WeightedModel& m,
                                           std::span<const double> x_grid,
                                           const EvalOptions& opts = {});

/// Bounds for repeated weighting h_k = w^k h: the arithmetic and harmonic
/// ratio bounds, the geometric ratio identity exp(k int w ln w / int w) and
/// its lower bound for w > 1, and the cross-comparisons with the plain
/// means under the stated sign conditions.  Unmet preconditions produce
/// skipped reports, never failures.
std::vector<BoundReport> sequence_weight_bounds(const WeightedModel& m, int k,
                                                std::span<const double> x_grid,
                                                const EvalOptions& opts = {});

/// For a model whose weighted AFR is monotone: checks the survival bound
/// Fw(alpha x) >= (<=) Fw(x)^(W(alpha x)/W(x)) over all (alpha, x) pairs and
/// that exp(-A^w), equivalently Fw^(1/W), is monotone the opposite way.
BoundReport star_shaped_check(const WeightedModel& m,
                              std::span<const double> alphas,
                              std::span<const double> x_grid,
                              const EvalOptions& opts = {});

/// Same idea for the weighted geometric class: the cumulative weighted
/// log-hazard satisfies L(alpha x) <= (>=) (W(alpha x)/W(x)) L(x).
BoundReport gfr_star_shaped_check(const WeightedModel& m,
                                  std::span<const double> alphas,
                                  std::span<const double> x_grid,
                                  const EvalOptions& opts = {});

}  // namespace wfr

#endif  // WFR_AGING_HPP
