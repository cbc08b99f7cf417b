#include "wfr/systems.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "wfr/errors.hpp"

namespace wfr {

MixtureSpec make_mixture(std::vector<HazardModel> components,
                         std::vector<double> proportions) {
  if (components.empty() || components.size() != proportions.size()) {
    throw ValidationError("make_mixture: components/proportions size mismatch");
  }
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0)) throw ValidationError("make_mixture: proportions must be > 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("make_mixture: proportions must sum to 1 (within 1e-12)");
  }
  return MixtureSpec{std::move(components), std::move(proportions)};
}

MixtureEval mixture_hazard(const MixtureSpec& spec, double x) {
  if (!(x >= 0.0)) throw ValidationError("mixture_hazard: x must be >= 0");
  const std::size_t n = spec.components.size();
  std::vector<double> mass(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] = spec.proportions[i] * spec.components[i].survival(x);
    total += mass[i];
  }
  if (!(total > 0.0)) {
    throw DegenerateError("mixture_hazard: support exhausted, all survivals 0");
  }
  MixtureEval out;
  out.effective_weights.resize(n);
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.effective_weights[i] = mass[i] / total;
    partial += out.effective_weights[i];
  }
  out.effective_weights[n - 1] = 1.0 - partial;  // exact unit sum
  for (std::size_t i = 0; i < n; ++i) {
    out.hazard += out.effective_weights[i] * spec.components[i].hazard(x);
  }
  return out;
}

double series_hazard(const WeightedSeriesSpec& spec, double x) {
  double h = 0.0;
  for (const auto& c : spec.components) {
    const double w = c.weight(x);
    if (w != 0.0) h += w * c.hazard.hazard(x);
  }
  return h;
}

WeightedSeriesSpec mixture_as_series(const MixtureSpec& spec) {
  WeightedSeriesSpec out;
  out.weights_sum_to_one = true;
  auto shared = std::make_shared<const MixtureSpec>(spec);
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    auto weight = [shared, i](double x) {
      return mixture_hazard(*shared, x).effective_weights[i];
    };
    out.components.push_back(WeightedComponent{
        spec.components[i],
        WeightFunction::from_function(weight, Monotone::unknown,
                                      "mixture-weight-" + std::to_string(i))});
  }
  return out;
}

double max_weight_sum_gap(const WeightedSeriesSpec& spec,
                          std::span<const double> grid) {
  double gap = 0.0;
  for (double x : grid) {
    double sum = 0.0;
    for (const auto& c : spec.components) sum += c.weight(x);
    gap = std::max(gap, std::abs(sum - 1.0));
  }
  return gap;
}

void NonclosureSearchBox::validate() const {
  if (!(alpha > 0.0 && a > 0.0)) {
    throw ValidationError("NonclosureSearchBox: alpha and a must be > 0");
  }
  for (double beta : betas) {
    if (!(beta > 1.0)) throw ValidationError("NonclosureSearchBox: beta must be > 1");
  }
  for (double b : bs) {
    if (!(b > 1.0)) throw ValidationError("NonclosureSearchBox: b must be > 1");
  }
  for (double n : ns) {
    if (!(n < 0.0)) throw ValidationError("NonclosureSearchBox: n must be < 0");
  }
  if (!(t_lo > 0.0 && t_lo < t_hi)) {
    throw ValidationError("NonclosureSearchBox: need 0 < t_lo < t_hi");
  }
  if (scan_grid < 16) {
    throw ValidationError("NonclosureSearchBox: scan_grid must be >= 16");
  }
}

WeightedSeriesSpec nonclosure_series(double alpha, double beta, double a,
                                     double b, double n) {
  WeightedSeriesSpec spec;
  spec.components.push_back(WeightedComponent{HazardModel::weibull(alpha, beta),
                                              WeightFunction::exponential(n)});
  spec.components.push_back(WeightedComponent{
      HazardModel::weibull(a, b), WeightFunction::one_minus_exponential(n)});
  spec.weights_sum_to_one = true;
  return spec;
}

namespace {

MonotoneVerdict scan_system_afr(const WeightedSeriesSpec& spec, double t_lo,
                                double t_hi, int grid_size,
                                const QuadratureConfig& quad) {
  const std::vector<double> grid = make_grid(t_lo, t_hi, grid_size);
  const auto h = [&spec](double t) { return series_hazard(spec, t); };
  const std::vector<double> cumulative = integrate_to_grid(h, grid, quad);
  std::vector<double> afr(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) afr[i] = cumulative[i] / grid[i];
  const std::function<double(double)> refine = [&spec, &quad](double t) {
    return integrate([&spec](double u) { return series_hazard(spec, u); }, 0.0,
                     t, quad)
               .value /
           t;
  };
  return scan_monotone_values(grid, afr, &refine);
}

}  // namespace

NonclosureWitness find_afr_nonclosure_witness(const NonclosureSearchBox& box,
                                              const EvalOptions& opts) {
  box.validate();
  NonclosureWitness witness;
  witness.t_lo = box.t_lo;
  witness.t_hi = box.t_hi;
  witness.scan_grid = box.scan_grid;

  for (double beta : box.betas) {
    for (double b : box.bs) {
      for (double n : box.ns) {
        ++witness.combinations_tried;
        const WeightedSeriesSpec spec =
            nonclosure_series(box.alpha, beta, box.a, b, n);
        const MonotoneVerdict system = scan_system_afr(
            spec, box.t_lo, box.t_hi, box.scan_grid, opts.quad);
        if (system.label != Monotone::non_monotone ||
            system.change_points.empty()) {
          continue;
        }

        const WeightedModel c1(HazardModel::weibull(box.alpha, beta),
                               WeightFunction::exponential(n));
        const WeightedModel c2(HazardModel::weibull(box.a, b),
                               WeightFunction::one_minus_exponential(n));
        AgingReport r1 = classify(c1, box.t_lo, box.t_hi, box.scan_grid, opts);
        AgingReport r2 = classify(c2, box.t_lo, box.t_hi, box.scan_grid, opts);
        if (!r1.has(AgingClass::IwAFR) || !r2.has(AgingClass::IwAFR)) continue;

        const MonotoneVerdict refined = scan_system_afr(
            spec, box.t_lo, box.t_hi, box.scan_grid * 4, opts.quad);
        if (refined.label != Monotone::non_monotone ||
            refined.change_points.empty()) {
          continue;
        }

        witness.found = true;
        witness.alpha = box.alpha;
        witness.beta = beta;
        witness.a = box.a;
        witness.b = b;
        witness.n = n;
        witness.component1 = std::move(r1);
        witness.component2 = std::move(r2);
        witness.system_afr = system;
        witness.system_afr_refined = refined;
        return witness;
      }
    }
  }
  return witness;
}

}  // namespace wfr
