#include "wfr/weighted_means.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "wfr/errors.hpp"
#include "wfr/special_functions.hpp"

namespace wfr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Closed-form cumulative integrals for the fast-path families.  Any entry
// may be absent; an absent entry means quadrature.  *_divergent marks an
// integral known to diverge at 0 (then the evaluator is not used).
struct ClosedForms {
  std::function<double(double)> wh;      // K(x)  = int w h
  std::function<double(double)> w_ln_h;  // L(x)  = int w ln h
  std::function<double(double)> w_inv_h; // R(x)  = int w / h
  bool wh_divergent = false;
  bool w_inv_h_divergent = false;
};

std::optional<ClosedForms> closed_forms_for(const HazardModel& hm,
                                            const WeightFunction& w) {
  ClosedForms out;
  if (hm.family() == HazardFamily::exponential) {
    // Constant hazard factors out of every mean for any weight.
    const double lambda = hm.param("lambda");
    const WeightFunction weight = w;
    out.wh = [lambda, weight](double x) { return lambda * weight.cumulative(x); };
    out.w_ln_h = [lambda, weight](double x) {
      return std::log(lambda) * weight.cumulative(x);
    };
    out.w_inv_h = [lambda, weight](double x) {
      return weight.cumulative(x) / lambda;
    };
    return out;
  }
  if (hm.family() != HazardFamily::weibull) return std::nullopt;

  const double alpha = hm.param("alpha");
  const double beta = hm.param("beta");
  switch (w.family()) {
    case WeightFamily::constant: {
      out.wh = [alpha, beta](double x) { return alpha * std::pow(x, beta); };
      out.w_ln_h = [alpha, beta](double x) {
        return x <= 0.0 ? 0.0
                        : x * (std::log(alpha * beta) +
                               (beta - 1.0) * (std::log(x) - 1.0));
      };
      if (beta < 2.0) {
        out.w_inv_h = [alpha, beta](double x) {
          return std::pow(x, 2.0 - beta) / (alpha * beta * (2.0 - beta));
        };
      } else {
        out.w_inv_h_divergent = true;
      }
      return out;
    }
    case WeightFamily::power: {
      const double c = w.param("c");
      if (beta + c > 0.0) {
        out.wh = [alpha, beta, c](double x) {
          return alpha * beta * std::pow(x, beta + c) / (beta + c);
        };
      } else {
        out.wh_divergent = true;
      }
      out.w_ln_h = [alpha, beta, c](double x) {
        return x <= 0.0 ? 0.0
                        : std::pow(x, c + 1.0) / (c + 1.0) *
                              (std::log(alpha * beta) +
                               (beta - 1.0) * (std::log(x) - 1.0 / (c + 1.0)));
      };
      if (c + 2.0 - beta > 0.0) {
        out.w_inv_h = [alpha, beta, c](double x) {
          return std::pow(x, c + 2.0 - beta) / (alpha * beta * (c + 2.0 - beta));
        };
      } else {
        out.w_inv_h_divergent = true;
      }
      return out;
    }
    case WeightFamily::exponential: {
      const double n = w.param("n");
      if (n == 0.0) {
        return closed_forms_for(hm, WeightFunction::constant());
      }
      if (n > 0.0) return std::nullopt;  // no real closed form
      const double m = -n;
      out.wh = [alpha, beta, m](double x) {
        return alpha * beta * std::pow(m, -beta) *
               lower_incomplete_gamma(beta, m * x);
      };
      // int_0^x e^{nu} ln u du =
      //   ((e^{nx}-1) ln x + euler + ln(m x) + E1(m x)) / n
      out.w_ln_h = [alpha, beta, n, m](double x) {
        if (x <= 0.0) return 0.0;
        const double W = std::expm1(n * x) / n;
        const double J = (std::expm1(n * x) * std::log(x) + euler_gamma() +
                          std::log(m * x) + exponential_integral_e1(m * x)) /
                         n;
        return std::log(alpha * beta) * W + (beta - 1.0) * J;
      };
      if (beta < 2.0) {
        out.w_inv_h = [alpha, beta, m](double x) {
          return std::pow(m, beta - 2.0) *
                 lower_incomplete_gamma(2.0 - beta, m * x) / (alpha * beta);
        };
      } else {
        out.w_inv_h_divergent = true;
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

struct IntegralOutcome {
  double value = kNaN;
  bool divergent = false;
};

// Integrand builders.  Measure-theoretic convention: zero weight kills the
// integrand regardless of h.
std::function<double(double)> integrand_wh(const WeightedModel& m) {
  const HazardModel h = m.hazard_model();
  const WeightFunction w = m.weight();
  return [h, w](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu * h.hazard(u);
  };
}

std::function<double(double)> integrand_w_ln_h(const WeightedModel& m) {
  const HazardModel h = m.hazard_model();
  const WeightFunction w = m.weight();
  return [h, w](double u) {
    const double wu = w(u);
    if (wu == 0.0) return 0.0;
    return wu * std::log(h.hazard(u));
  };
}

std::function<double(double)> integrand_w_inv_h(const WeightedModel& m) {
  const HazardModel h = m.hazard_model();
  const WeightFunction w = m.weight();
  return [h, w](double u) {
    const double wu = w(u);
    if (wu == 0.0) return 0.0;
    return wu / h.hazard(u);
  };
}

// Zero hazard under positive weight makes ln h and 1/h blow up.  Mass below
// the support start is a well-defined divergence-to-limit; an interior dead
// zone is degenerate input.
enum class HazardZeroState { none, below_support, interior };

HazardZeroState hazard_zero_state(const WeightedModel& m, double x) {
  const double lo = m.hazard_model().support().lo;
  HazardZeroState state = HazardZeroState::none;
  for (int i = 1; i <= 17; ++i) {
    const double u = x * static_cast<double>(i) / 18.0;
    if (m.weight()(u) <= 0.0) continue;
    if (m.hazard_model().hazard(u) == 0.0) {
      if (u > lo) return HazardZeroState::interior;
      state = HazardZeroState::below_support;
    }
  }
  if (state == HazardZeroState::none && lo > 0.0 && x > lo) {
    // the uniform probe can step right over a narrow sub-support head
    for (int i = 1; i <= 4; ++i) {
      const double u = lo * static_cast<double>(i) / 5.0;
      if (m.weight()(u) > 0.0 && m.hazard_model().hazard(u) == 0.0) {
        return HazardZeroState::below_support;
      }
    }
  }
  return state;
}

IntegralOutcome integrate_or_probe(const std::function<double(double)>& f,
                                   double x, const QuadratureConfig& quad) {
  try {
    return IntegralOutcome{integrate(f, 0.0, x, quad).value, false};
  } catch (const AccuracyError& e) {
    const DivergenceProbe probe = probe_left_divergence(f, 0.0, x, quad);
    if (probe.likely_divergent) return IntegralOutcome{e.best_estimate, true};
    throw;
  }
}

}  // namespace

WeightedModel::WeightedModel(HazardModel hazard, WeightFunction weight)
    : hazard_(std::move(hazard)), weight_(std::move(weight)) {}

double WeightedModel::weighted_hazard(double x) const {
  const double wu = weight_(x);
  return wu == 0.0 ? 0.0 : wu * hazard_.hazard(x);
}

double WeightedModel::cumulative_weight(double x, const EvalOptions& opts) const {
  if (x <= 0.0) return 0.0;
  if (opts.use_closed_forms && weight_.has_closed_form_cumulative()) {
    return weight_.cumulative(x, opts.quad);
  }
  const WeightFunction w = weight_;
  return integrate([w](double u) { return w(u); }, 0.0, x, opts.quad).value;
}

double WeightedModel::cumulative_weighted_hazard(double x,
                                                 const EvalOptions& opts) const {
  if (x <= 0.0) return 0.0;
  if (opts.use_closed_forms) {
    if (const auto forms = closed_forms_for(hazard_, weight_)) {
      if (forms->wh_divergent) return kInf;
      if (forms->wh) return forms->wh(x);
    }
  }
  const auto outcome = integrate_or_probe(integrand_wh(*this), x, opts.quad);
  return outcome.divergent ? kInf : outcome.value;
}

double WeightedModel::weighted_survival(double x, const EvalOptions& opts) const {
  if (x <= 0.0) return 1.0;
  return std::exp(-cumulative_weighted_hazard(x, opts));
}

double WeightedModel::weighted_density(double x, const EvalOptions& opts) const {
  return weighted_hazard(x) * weighted_survival(x, opts);
}

MeanValue wafr(const WeightedModel& m, double x, const EvalOptions& opts) {
  if (!(x > 0.0)) throw ValidationError("wafr: x must be > 0");
  const double W = m.cumulative_weight(x, opts);
  if (!(W > 0.0)) throw DegenerateError("wafr: degenerate weight, W(x) = 0");
  const double K = m.cumulative_weighted_hazard(x, opts);
  if (!std::isfinite(K)) return MeanValue{kInf, true};
  return MeanValue{K / W, false};
}

MeanValue wgfr(const WeightedModel& m, double x, const EvalOptions& opts) {
  if (!(x > 0.0)) throw ValidationError("wgfr: x must be > 0");
  const double W = m.cumulative_weight(x, opts);
  if (!(W > 0.0)) throw DegenerateError("wgfr: degenerate weight, W(x) = 0");

  switch (hazard_zero_state(m, x)) {
    case HazardZeroState::interior:
      throw DegenerateError("wgfr: hazard vanishes on a subinterval of (0, x)");
    case HazardZeroState::below_support:
      return MeanValue{0.0, true};  // exponent -> -inf
    case HazardZeroState::none:
      break;
  }

  if (opts.use_closed_forms) {
    if (const auto forms = closed_forms_for(m.hazard_model(), m.weight())) {
      if (forms->w_ln_h) return MeanValue{std::exp(forms->w_ln_h(x) / W), false};
    }
  }
  const auto outcome = integrate_or_probe(integrand_w_ln_h(m), x, opts.quad);
  if (outcome.divergent) return MeanValue{kNaN, true};
  return MeanValue{std::exp(outcome.value / W), false};
}

MeanValue whfr(const WeightedModel& m, double x, const EvalOptions& opts) {
  if (!(x > 0.0)) throw ValidationError("whfr: x must be > 0");
  const double W = m.cumulative_weight(x, opts);
  if (!(W > 0.0)) throw DegenerateError("whfr: degenerate weight, W(x) = 0");

  switch (hazard_zero_state(m, x)) {
    case HazardZeroState::interior:
      throw DegenerateError("whfr: hazard vanishes on a subinterval of (0, x)");
    case HazardZeroState::below_support:
      return MeanValue{0.0, true};
    case HazardZeroState::none:
      break;
  }

  if (opts.use_closed_forms) {
    if (const auto forms = closed_forms_for(m.hazard_model(), m.weight())) {
      if (forms->w_inv_h_divergent) return MeanValue{0.0, true};
      if (forms->w_inv_h) return MeanValue{W / forms->w_inv_h(x), false};
    }
  }
  const auto outcome = integrate_or_probe(integrand_w_inv_h(m), x, opts.quad);
  if (outcome.divergent) return MeanValue{0.0, true};
  return MeanValue{W / outcome.value, false};
}

namespace {

void enforce_mean_ordering(const MeanTriple& t) {
  if (!t.afr.finite_positive() || !t.gfr.finite_positive() ||
      !t.hfr.finite_positive()) {
    return;
  }
  const double scale = std::max({t.afr.value, t.gfr.value, t.hfr.value});
  const double slack = 1e-9 * scale;
  if (t.gfr.value > t.afr.value + slack || t.hfr.value > t.gfr.value + slack) {
    throw AccuracyError("mean ordering afr >= gfr >= hfr violated at x=" +
                            std::to_string(t.x),
                        t.afr.value, slack);
  }
}

}  // namespace

MeanTriple mean_triple(const WeightedModel& m, double x, const EvalOptions& opts) {
  MeanTriple t;
  t.x = x;
  t.afr = wafr(m, x, opts);
  t.gfr = wgfr(m, x, opts);
  t.hfr = whfr(m, x, opts);
  enforce_mean_ordering(t);
  return t;
}

std::vector<MeanTriple> mean_triple_grid(const WeightedModel& m,
                                         std::span<const double> grid,
                                         const EvalOptions& opts) {
  if (grid.empty()) return {};
  if (!(grid[0] > 0.0)) {
    throw ValidationError("mean_triple_grid: grid must be positive");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("mean_triple_grid: grid must be ascending");
    }
  }

  const double x_max = grid.back();
  std::vector<MeanTriple> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i].x = grid[i];

  // Closed-form route: per-point evaluation is already one sweep's worth.
  const auto forms =
      opts.use_closed_forms
          ? closed_forms_for(m.hazard_model(), m.weight())
          : std::nullopt;
  if (forms) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out[i].afr = wafr(m, grid[i], opts);
      out[i].gfr = wgfr(m, grid[i], opts);
      out[i].hfr = whfr(m, grid[i], opts);
      enforce_mean_ordering(out[i]);
    }
    return out;
  }

  // Quadrature route: cumulative panel sums shared across the grid.
  const auto zero_state = hazard_zero_state(m, x_max);
  if (zero_state == HazardZeroState::interior) {
    throw DegenerateError("mean_triple_grid: hazard vanishes on a subinterval");
  }
  const bool below_support = zero_state == HazardZeroState::below_support;

  const WeightFunction weight = m.weight();
  const std::vector<double> W =
      integrate_to_grid([weight](double u) { return weight(u); }, grid, opts.quad);

  auto sweep = [&](const std::function<double(double)>& f,
                   bool* divergent) -> std::vector<double> {
    *divergent = false;
    const DivergenceProbe probe =
        probe_left_divergence(f, 0.0, grid[0], opts.quad);
    if (probe.likely_divergent) {
      *divergent = true;
      return {};
    }
    try {
      return integrate_to_grid(f, grid, opts.quad);
    } catch (const AccuracyError&) {
      *divergent = true;
      return {};
    }
  };

  bool k_div = false;
  const std::vector<double> K = sweep(integrand_wh(m), &k_div);
  bool l_div = below_support;
  const std::vector<double> L =
      below_support ? std::vector<double>{} : [&] {
        bool d = false;
        auto v = sweep(integrand_w_ln_h(m), &d);
        l_div = d;
        return v;
      }();
  bool r_div = below_support;
  const std::vector<double> R =
      below_support ? std::vector<double>{} : [&] {
        bool d = false;
        auto v = sweep(integrand_w_inv_h(m), &d);
        r_div = d;
        return v;
      }();

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(W[i] > 0.0)) {
      throw DegenerateError("mean_triple_grid: degenerate weight at x=" +
                            std::to_string(grid[i]));
    }
    out[i].afr = k_div ? MeanValue{kInf, true} : MeanValue{K[i] / W[i], false};
    out[i].gfr = l_div ? MeanValue{below_support ? 0.0 : kNaN, true}
                       : MeanValue{std::exp(L[i] / W[i]), false};
    out[i].hfr = r_div ? MeanValue{0.0, true} : MeanValue{W[i] / R[i], false};
    enforce_mean_ordering(out[i]);
  }
  return out;
}

ValidityReport check_validity_postulates(const WeightedModel& m, double horizon,
                                         const EvalOptions& opts) {
  if (!(horizon > 0.0)) {
    throw ValidationError("check_validity_postulates: horizon must be > 0");
  }
  ValidityReport report;

  report.nonnegative = true;
  for (int i = 1; i <= 64; ++i) {
    const double x = horizon * static_cast<double>(i) / 64.0;
    if (m.weight()(x) < 0.0 || m.hazard_model().hazard(x) < 0.0) {
      report.nonnegative = false;
      report.notes.push_back("negative weight or hazard near x=" + std::to_string(x));
      break;
    }
  }

  const double k_horizon = m.cumulative_weighted_hazard(horizon, opts);
  report.finite_cumulative = std::isfinite(k_horizon);
  if (!report.finite_cumulative) {
    report.notes.push_back("cumulative weighted hazard not finite at horizon");
  }

  double x = horizon;
  for (int k = 0; k <= 6; ++k) {
    report.tail_values.push_back(m.cumulative_weighted_hazard(x, opts));
    x *= 2.0;
  }
  bool growing = true;
  for (std::size_t i = 1; i < report.tail_values.size(); ++i) {
    if (!(report.tail_values[i] >= report.tail_values[i - 1])) growing = false;
  }
  const double last_increment =
      report.tail_values.back() - report.tail_values[report.tail_values.size() - 2];
  report.likely_divergent_tail =
      growing && (last_increment > opts.quad.abs_tol ||
                  !std::isfinite(report.tail_values.back()));
  report.notes.push_back(report.likely_divergent_tail
                             ? "tail growth: likely-divergent"
                             : "tail growth: likely-convergent (defective)");

  report.propagation_checkable = false;
  report.notes.push_back(
      "infinite-hazard propagation is a model-construction constraint; not "
      "checked numerically");
  return report;
}

}  // namespace wfr
