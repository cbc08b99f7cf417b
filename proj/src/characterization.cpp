#include "wfr/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wfr/errors.hpp"

namespace wfr {

const char* to_string(MeanKind k) noexcept {
  switch (k) {
    case MeanKind::arithmetic: return "arithmetic";
    case MeanKind::geometric: return "geometric";
    case MeanKind::harmonic: return "harmonic";
  }
  return "?";
}

const char* to_string(MeanPair p) noexcept {
  switch (p) {
    case MeanPair::AG: return "AG";
    case MeanPair::GH: return "GH";
    case MeanPair::AH: return "AH";
  }
  return "?";
}

CharacterizationVerdict test_exponentiality_via_mean_equality(
    const WeightedModel& m, MeanPair pair, std::span<const double> x_grid,
    double threshold, const EvalOptions& opts) {
  if (x_grid.empty()) {
    throw ValidationError("test_exponentiality_via_mean_equality: empty grid");
  }
  CharacterizationVerdict verdict;
  verdict.test_id = std::string("mean-equality-") + to_string(pair);
  verdict.threshold = threshold;

  for (double x : x_grid) {
    MeanValue lhs, rhs;
    switch (pair) {
      case MeanPair::AG:
        lhs = wafr(m, x, opts);
        rhs = wgfr(m, x, opts);
        break;
      case MeanPair::GH:
        lhs = wgfr(m, x, opts);
        rhs = whfr(m, x, opts);
        break;
      case MeanPair::AH:
        lhs = wafr(m, x, opts);
        rhs = whfr(m, x, opts);
        break;
    }
    if (lhs.divergent || rhs.divergent) {
      verdict.inconclusive = true;
      verdict.note = "divergent mean at x=" + std::to_string(x);
      return verdict;
    }
    const double gap = std::abs(lhs.value - rhs.value) /
                       std::max({std::abs(lhs.value), std::abs(rhs.value), 1e-300});
    if (gap > verdict.statistic) {
      verdict.statistic = gap;
      verdict.witness_x = x;
    }
  }
  verdict.consistent = verdict.statistic <= threshold;

  if (verdict.consistent) {
    const HazardModel hm = m.hazard_model();
    const Monotone hdir =
        scan_monotonicity([hm](double x) { return hm.hazard(x); },
                          x_grid.front(), x_grid.back(), 128)
            .label;
    if (hdir != Monotone::constant) {
      verdict.note = std::string("means equal but hazard scanned ") +
                     to_string(hdir);
    }
  }
  return verdict;
}

RecoveredHazard recover_hazard_from_proportionality(const WeightFunction& w,
                                                    MeanKind which, double ratio,
                                                    double k) {
  if (!(ratio > 0.0)) {
    throw ValidationError("recover_hazard_from_proportionality: ratio must be > 0");
  }
  if (!(k > 0.0)) {
    throw ValidationError("recover_hazard_from_proportionality: k must be > 0");
  }
  double exponent = 0.0;
  switch (which) {
    case MeanKind::arithmetic: exponent = (1.0 - ratio) / ratio; break;
    case MeanKind::geometric: exponent = std::log(std::exp(1.0) / ratio) - 1.0; break;
    case MeanKind::harmonic: exponent = 1.0 - ratio; break;
  }
  if (!(exponent > -1.0)) {
    throw ValidationError(
        "recover_hazard_from_proportionality: W-exponent <= -1, hazard not "
        "locally integrable");
  }

  const WeightFunction weight = w;
  std::function<double(double)> hazard;
  if (which == MeanKind::harmonic) {
    const double c = ratio;
    hazard = [weight, k, c, exponent](double x) {
      if (x <= 0.0) return exponent > 0.0 ? 0.0 : (exponent == 0.0 ? 1.0 : 0.0);
      return std::pow(weight.cumulative(x) / (k * c), exponent);
    };
  } else {
    hazard = [weight, k, exponent](double x) {
      if (x <= 0.0) return exponent > 0.0 ? 0.0 : (exponent == 0.0 ? k : 0.0);
      return k * std::pow(weight.cumulative(x), exponent);
    };
  }
  const Monotone analytic = exponent > 0.0   ? Monotone::increasing
                            : exponent < 0.0 ? Monotone::decreasing
                                             : Monotone::constant;
  RecoveredHazard out{
      HazardModel::from_function(std::move(hazard), Interval{},
                                 std::string("recovered-") + to_string(which),
                                 analytic),
      exponent, std::nullopt, std::nullopt};

  if (which == MeanKind::arithmetic && w.family() == WeightFamily::power) {
    const double n = w.param("c");
    const double a = ratio;
    const double shape = (n - a * n + 1.0) / a;
    if (shape > 0.0) {
      out.weibull_shape = shape;
      out.weibull_scale =
          k * a / ((n - a * n + 1.0) * std::pow(n + 1.0, (1.0 - a) / a));
    }
  }
  return out;
}

ProportionalityResult test_proportionality(const WeightedModel& m, MeanKind which,
                                           std::span<const double> x_grid,
                                           double threshold,
                                           const EvalOptions& opts) {
  if (x_grid.empty()) throw ValidationError("test_proportionality: empty grid");
  ProportionalityResult result;
  result.verdict.test_id = std::string("proportionality-") + to_string(which);
  result.verdict.threshold = threshold;

  std::vector<double> ratios;
  std::vector<double> xs;
  for (double x : x_grid) {
    const double h = m.hazard_model().hazard(x);
    if (!(h > 0.0)) {
      throw DegenerateError("test_proportionality: hazard is zero at x=" +
                            std::to_string(x));
    }
    MeanValue mean;
    switch (which) {
      case MeanKind::arithmetic: mean = wafr(m, x, opts); break;
      case MeanKind::geometric: mean = wgfr(m, x, opts); break;
      case MeanKind::harmonic: mean = whfr(m, x, opts); break;
    }
    if (mean.divergent) {
      result.verdict.inconclusive = true;
      result.verdict.note = "divergent mean at x=" + std::to_string(x);
      return result;
    }
    ratios.push_back(mean.value / h);
    xs.push_back(x);
  }

  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  result.ratio = n % 2 == 1 ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double dev = std::abs(ratios[i] - result.ratio) /
                       std::max(std::abs(result.ratio), 1e-300);
    if (dev > result.verdict.statistic) {
      result.verdict.statistic = dev;
      result.verdict.witness_x = xs[i];
    }
  }
  result.verdict.consistent = result.verdict.statistic <= threshold;

  const HazardModel hm = m.hazard_model();
  result.hazard_direction =
      scan_monotonicity([hm](double x) { return hm.hazard(x); }, x_grid.front(),
                        x_grid.back(), 128)
          .label;
  if (result.verdict.consistent) {
    // ratio <= 1 predicts increasing hazard, ratio >= 1 decreasing; a
    // constant verdict satisfies both.
    if (result.ratio < 1.0) {
      result.direction_consistent =
          result.hazard_direction == Monotone::increasing ||
          result.hazard_direction == Monotone::constant;
    } else if (result.ratio > 1.0) {
      result.direction_consistent =
          result.hazard_direction == Monotone::decreasing ||
          result.hazard_direction == Monotone::constant;
    } else {
      result.direction_consistent = result.hazard_direction == Monotone::constant;
    }
  }
  return result;
}

}  // namespace wfr
