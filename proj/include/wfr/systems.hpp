#ifndef WFR_SYSTEMS_HPP
#define WFR_SYSTEMS_HPP

#include <vector>

#include "wfr/aging.hpp"
#include "wfr/models.hpp"

namespace wfr {

/// Mixture sum pi_i F_i with positive proportions summing to one.
struct MixtureSpec {
  std::vector<HazardModel> components;
  std::vector<double> proportions;
};

MixtureSpec make_mixture(std::vector<HazardModel> components,
                         std::vector<double> proportions);

struct MixtureEval {
  double hazard = 0.0;
  /// p_i(x) = pi_i * survival_i(x) / sum_j pi_j survival_j(x); sums to one
  /// exactly (the last entry is the complement of the others).
  std::vector<double> effective_weights;
};

MixtureEval mixture_hazard(const MixtureSpec& spec, double x);

struct WeightedComponent {
  HazardModel hazard;
  WeightFunction weight;
};

/// Series system of weighted components: hazard sum_i w_i(x) h_i(x).
struct WeightedSeriesSpec {
  std::vector<WeightedComponent> components;
  bool weights_sum_to_one = false;
};

double series_hazard(const WeightedSeriesSpec& spec, double x);

/// Rewrites a mixture as the equivalent series system whose weights are the
/// effective mixture weights; the series hazard reproduces the mixture
/// hazard identically.
WeightedSeriesSpec mixture_as_series(const MixtureSpec& spec);

/// Largest |sum_i w_i(x) - 1| over the grid (for specs claiming unit sum).
double max_weight_sum_gap(const WeightedSeriesSpec& spec,
                          std::span<const double> grid);

/// Parameter box for the non-closure search: a two-component series system
/// h1 = alpha*beta*t^(beta-1) with weight e^(n t) and h2 = a*b*t^(b-1) with
/// weight 1 - e^(n t), constrained to beta, b > 1 and n < 0 so that both
/// components have increasing weighted AFR.
struct NonclosureSearchBox {
  std::vector<double> betas{3.0, 4.0, 5.0, 6.0};
  std::vector<double> bs{1.05, 1.1, 1.25};
  std::vector<double> ns{-0.5, -1.0, -2.0};
  double alpha = 1.0;
  double a = 1.0;
  double t_lo = 0.05;
  double t_hi = 20.0;
  int scan_grid = 96;

  void validate() const;
};

struct NonclosureWitness {
  bool found = false;
  int combinations_tried = 0;
  double alpha = 0.0, beta = 0.0, a = 0.0, b = 0.0, n = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  int scan_grid = 0;
  AgingReport component1, component2;    // both must carry Iw-AFR
  MonotoneVerdict system_afr;            // plain AFR of the series hazard
  MonotoneVerdict system_afr_refined;    // confirmation at 4x grid
};

/// Sweeps the box and returns the first parameter set whose components both
/// classify Iw-AFR while the series system's plain AFR is non-monotone,
/// re-verified on a 4x finer grid.  found=false reports an exhausted box;
/// there is no silent success.
NonclosureWitness find_afr_nonclosure_witness(const NonclosureSearchBox& box,
                                              const EvalOptions& opts = {});

/// The series system the witness parameters describe.
WeightedSeriesSpec nonclosure_series(double alpha, double beta, double a,
                                     double b, double n);

}  // namespace wfr

#endif  // WFR_SYSTEMS_HPP
