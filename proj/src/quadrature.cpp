#include "wfr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (positive half).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  double value;
  double err;
  int depth;
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.err < rhs.err;
  }
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double gauss = 0.0;
  double kronrod = 0.0;
  for (std::size_t i = 0; i < kXgk.size(); ++i) {
    const double dx = half * kXgk[i];
    const double x1 = center - dx;
    const double f1 = f(x1);
    if (!std::isfinite(f1)) {
      throw DomainError("integrate: non-finite integrand at x=" +
                        std::to_string(x1));
    }
    double fsum = f1;
    if (kXgk[i] != 0.0) {
      const double x2 = center + dx;
      const double f2 = f(x2);
      if (!std::isfinite(f2)) {
        throw DomainError("integrate: non-finite integrand at x=" +
                          std::to_string(x2));
      }
      fsum += f2;
    }
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

// Adaptive refinement driven by a worst-panel-first queue.
Integral adapt(const std::function<double(double)>& f, double a, double b,
               const QuadratureConfig& cfg) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> active;
  active.push(gk15(f, a, b, 0));
  double value = active.top().value;
  double active_err = active.top().err;
  double frozen_err = 0.0;  // error stuck in panels at max depth
  std::size_t n_panels = 1;

  const double min_width =
      64.0 * std::numeric_limits<double>::epsilon() *
      std::max({std::abs(a), std::abs(b), 1.0});

  auto tolerance = [&]() {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  };

  while (!active.empty() && active_err + frozen_err > tolerance()) {
    const Panel worst = active.top();
    active.pop();
    active_err -= worst.err;
    if (worst.depth >= cfg.max_depth || worst.b - worst.a < min_width) {
      frozen_err += worst.err;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    const Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    active_err += left.err + right.err;
    active.push(left);
    active.push(right);
    n_panels += 1;
    if (n_panels > 200000) break;
  }

  const double total_err = active_err + frozen_err;
  if (total_err > tolerance()) {
    throw AccuracyError("integrate: tolerance not reached on [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "], error estimate " + std::to_string(total_err),
                        value, total_err);
  }
  return Integral{value, total_err};
}

bool finite_at(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isfinite(v);
}

// A finite endpoint value can still hide an integrable blow-up just inside
// the interval (guarded integrands that return 0 at the endpoint).  Detect
// growth by sampling toward the endpoint.
bool grows_toward(const std::function<double(double)>& f, double endpoint,
                  double inward) {
  const double d1 = endpoint + inward * 1e-6;
  const double d2 = endpoint + inward * 1e-9;
  const double f1 = std::abs(f(d1));
  const double f2 = std::abs(f(d2));
  if (!std::isfinite(f2)) return true;
  return f2 > 8.0 * f1 + 1.0;
}

// Power substitution x = a + t^8 flattens power/log singularities at a.
Integral integrate_singular_left(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureConfig& cfg) {
  const double width = b - a;
  const double tmax = std::pow(width, 1.0 / 8.0);
  auto g = [&](double t) {
    const double t2 = t * t;
    const double t4 = t2 * t2;
    return f(a + t4 * t4) * 8.0 * t4 * t2 * t;
  };
  return adapt(g, 0.0, tmax, cfg);
}

Integral integrate_singular_right(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureConfig& cfg) {
  auto mirrored = [&](double u) { return f(a + b - u); };
  return integrate_singular_left(mirrored, a, b, cfg);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw ValidationError("QuadratureConfig: abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw ValidationError("QuadratureConfig: rel_tol must be > 0");
  if (max_depth < 1) throw ValidationError("QuadratureConfig: max_depth must be >= 1");
  if (!(singularity_offset > 0.0 && singularity_offset < 1e-6)) {
    throw ValidationError(
        "QuadratureConfig: singularity_offset must be in (0, 1e-6)");
  }
}

Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a <= b)) throw ValidationError("integrate: requires a <= b");
  if (a == b) return Integral{0.0, 0.0};

  const bool singular_lo = !finite_at(f, a) || grows_toward(f, a, b - a);
  const bool singular_hi = !finite_at(f, b) || grows_toward(f, b, a - b);

  if (!singular_lo && !singular_hi) return adapt(f, a, b, cfg);

  if (singular_lo && singular_hi) {
    const double mid = 0.5 * (a + b);
    const Integral lo = integrate_singular_left(f, a, mid, cfg);
    const Integral hi = integrate_singular_right(f, mid, b, cfg);
    return Integral{lo.value + hi.value, lo.error + hi.error};
  }
  if (singular_lo) return integrate_singular_left(f, a, b, cfg);
  return integrate_singular_right(f, a, b, cfg);
}

std::vector<double> integrate_to_grid(const std::function<double(double)>& f,
                                      std::span<const double> grid,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (grid.empty()) return {};
  if (!(grid[0] >= 0.0)) {
    throw ValidationError("integrate_to_grid: grid[0] must be >= 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("integrate_to_grid: grid must be ascending");
    }
  }
  std::vector<double> out;
  out.reserve(grid.size());
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      acc += integrate(f, prev, grid[i], cfg).value;
    } catch (const AccuracyError& e) {
      throw AccuracyError("integrate_to_grid: panel [" + std::to_string(prev) +
                              ", " + std::to_string(grid[i]) + "]: " + e.what(),
                          e.best_estimate, e.error_estimate);
    } catch (const DomainError& e) {
      throw DomainError("integrate_to_grid: panel [" + std::to_string(prev) +
                        ", " + std::to_string(grid[i]) + "]: " + e.what());
    }
    prev = grid[i];
    out.push_back(acc);
  }
  return out;
}

DivergenceProbe probe_left_divergence(const std::function<double(double)>& f,
                                      double a, double b,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw ValidationError("probe_left_divergence: requires a < b");
  DivergenceProbe probe;
  // Relax the per-probe tolerance: the probes only feed a ratio test.
  QuadratureConfig loose = cfg;
  loose.rel_tol = std::max(cfg.rel_tol, 1e-9);
  loose.abs_tol = std::max(cfg.abs_tol, 1e-12);
  double eps = cfg.singularity_offset * std::max(1.0, b - a);
  for (int k = 0; k < 3; ++k) {
    try {
      probe.values[k] = integrate(f, a + eps, b, loose).value;
    } catch (const AccuracyError& e) {
      probe.values[k] = e.best_estimate;
      probe.likely_divergent = true;  // could not even stabilise the tail
      return probe;
    }
    eps *= 0.5;
  }
  const double d1 = probe.values[1] - probe.values[0];
  const double d2 = probe.values[2] - probe.values[1];
  const double scale =
      std::max(cfg.abs_tol, loose.rel_tol * std::abs(probe.values[2]));
  // Convergent integrable singularities add geometrically shrinking mass;
  // divergent ones add constant (log) or growing (power) increments.
  if (std::abs(d1) > 100.0 * scale && d1 * d2 > 0.0 &&
      std::abs(d2) >= 0.9 * std::abs(d1)) {
    probe.likely_divergent = true;
  }
  return probe;
}

}  // namespace wfr
