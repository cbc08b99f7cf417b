#include "wfr/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& constraint) {
  if (!ok) throw ValidationError(constraint);
}

double weibull_hazard(double alpha, double beta, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (beta > 1.0) return 0.0;
    if (beta == 1.0) return alpha;
    return kInf;
  }
  return alpha * beta * std::pow(x, beta - 1.0);
}

}  // namespace

const char* to_string(Monotone m) noexcept {
  switch (m) {
    case Monotone::increasing: return "increasing";
    case Monotone::decreasing: return "decreasing";
    case Monotone::constant: return "constant";
    case Monotone::non_monotone: return "non_monotone";
    case Monotone::unknown: return "unknown";
  }
  return "unknown";
}

std::vector<double> make_grid(double lo, double hi, int n) {
  require(n >= 2, "make_grid: need at least 2 points");
  require(lo < hi, "make_grid: need lo < hi");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------------------
// Monotonicity scanning

namespace {

// Ternary search for the local extremum inside [a,b]; maximum when
// rising_then_falling, minimum otherwise.
double refine_extremum(const std::function<double(double)>& f, double a,
                       double b, bool maximum, double width_tol) {
  while (b - a > width_tol) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    const double f1 = f(m1);
    const double f2 = f(m2);
    if (maximum ? (f1 < f2) : (f1 > f2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

MonotoneVerdict scan_monotone_values(std::span<const double> grid,
                                     std::span<const double> values,
                                     const std::function<double(double)>* refine_f) {
  require(grid.size() == values.size() && grid.size() >= 16,
          "scan_monotone_values: need matching grids of >= 16 points");
  MonotoneVerdict verdict;
  verdict.grid.assign(grid.begin(), grid.end());
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError("scan_monotonicity: non-finite value on grid");
    }
  }

  const std::size_t n = grid.size();
  std::vector<int> sign(n, 0);
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = (values[i + 1] - values[i - 1]) / (grid[i + 1] - grid[i - 1]);
    const double band = 1e-9 * (1.0 + std::abs(values[i]));
    if (std::abs(d) < band) continue;
    sign[i] = d > 0.0 ? 1 : -1;
    (d > 0.0 ? has_pos : has_neg) = true;
  }

  if (!has_pos && !has_neg) {
    verdict.label = Monotone::constant;
    return verdict;
  }
  if (!has_neg) {
    verdict.label = Monotone::increasing;
    return verdict;
  }
  if (!has_pos) {
    verdict.label = Monotone::decreasing;
    return verdict;
  }

  verdict.label = Monotone::non_monotone;
  const double width_tol = (grid.back() - grid.front()) * 1e-6;
  int prev_sign = 0;
  std::size_t prev_idx = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (sign[i] == 0) continue;
    if (prev_sign != 0 && sign[i] != prev_sign) {
      const double a = grid[prev_idx];
      const double b = grid[i];
      if (refine_f != nullptr && *refine_f) {
        verdict.change_points.push_back(
            refine_extremum(*refine_f, a, b, prev_sign > 0, width_tol));
      } else {
        verdict.change_points.push_back(0.5 * (a + b));
      }
    }
    prev_sign = sign[i];
    prev_idx = i;
  }
  return verdict;
}

MonotoneVerdict scan_monotonicity(const std::function<double(double)>& f,
                                  double lo, double hi, int grid_size) {
  require(grid_size >= 16, "scan_monotonicity: grid_size must be >= 16");
  require(lo < hi, "scan_monotonicity: need lo < hi");
  const std::vector<double> grid = make_grid(lo, hi, grid_size);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return scan_monotone_values(grid, values, &f);
}

// ---------------------------------------------------------------------------
// HazardModel

struct HazardModel::Impl {
  HazardFamily family = HazardFamily::custom;
  std::string label;
  Interval support;
  Monotone analytic = Monotone::unknown;
  std::vector<std::pair<std::string, double>> params;
  std::function<double(double)> h;
  std::function<double(double)> H;
  std::shared_ptr<const HazardModel> base;
};

HazardModel HazardModel::exponential(double lambda) {
  require(lambda > 0.0, "exponential: lambda must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::exponential;
  impl->label = "exponential";
  impl->analytic = Monotone::constant;
  impl->params = {{"lambda", lambda}};
  impl->h = [lambda](double x) { return x < 0.0 ? 0.0 : lambda; };
  impl->H = [lambda](double x) { return x <= 0.0 ? 0.0 : lambda * x; };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::weibull(double alpha, double beta) {
  require(alpha > 0.0, "weibull: alpha must be > 0");
  require(beta > 0.0, "weibull: beta must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::weibull;
  impl->label = "weibull";
  impl->analytic = beta > 1.0   ? Monotone::increasing
                   : beta < 1.0 ? Monotone::decreasing
                                : Monotone::constant;
  impl->params = {{"alpha", alpha}, {"beta", beta}};
  impl->h = [alpha, beta](double x) { return weibull_hazard(alpha, beta, x); };
  impl->H = [alpha, beta](double x) {
    return x <= 0.0 ? 0.0 : alpha * std::pow(x, beta);
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::additive_weibull(double alpha, double theta,
                                          double beta, double gamma) {
  require(alpha > 0.0, "additive_weibull: alpha must be > 0");
  require(theta > 0.0, "additive_weibull: theta must be > 0");
  require(beta > 0.0, "additive_weibull: beta must be > 0");
  require(gamma > 0.0, "additive_weibull: gamma must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::additive_weibull;
  impl->label = "additive_weibull";
  if (theta == 1.0 && gamma == 1.0) {
    impl->analytic = Monotone::constant;
  } else if (theta >= 1.0 && gamma >= 1.0) {
    impl->analytic = Monotone::increasing;
  } else if (theta <= 1.0 && gamma <= 1.0) {
    impl->analytic = Monotone::decreasing;
  } else {
    impl->analytic = Monotone::unknown;  // mixed powers: possibly bathtub
  }
  impl->params = {{"alpha", alpha}, {"theta", theta}, {"beta", beta}, {"gamma", gamma}};
  impl->h = [alpha, theta, beta, gamma](double x) {
    return weibull_hazard(alpha, theta, x) + weibull_hazard(beta, gamma, x);
  };
  impl->H = [alpha, theta, beta, gamma](double x) {
    return x <= 0.0 ? 0.0 : alpha * std::pow(x, theta) + beta * std::pow(x, gamma);
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::kies(double a, double b, double lambda, double beta) {
  require(a >= 0.0, "kies: a must be >= 0");
  require(a < b, "kies: requires a < b");
  require(lambda > 0.0, "kies: lambda must be > 0");
  require(beta > 0.0, "kies: beta must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::kies;
  impl->label = "kies";
  impl->analytic = beta >= 1.0 ? Monotone::increasing : Monotone::unknown;
  impl->params = {{"a", a}, {"b", b}, {"lambda", lambda}, {"beta", beta}};
  impl->support = {a, b};
  const double clamp_hi = b - 1e-12 * (b - a);
  impl->h = [a, b, lambda, beta, clamp_hi](double x) {
    if (x <= a) return 0.0;
    const double xc = std::min(x, clamp_hi);
    const double r = (xc - a) / (b - xc);
    return lambda * beta * std::pow(r, beta - 1.0) * (b - a) /
           ((b - xc) * (b - xc));
  };
  impl->H = [a, b, lambda, beta, clamp_hi](double x) {
    if (x <= a) return 0.0;
    const double xc = std::min(x, clamp_hi);
    return lambda * std::pow((xc - a) / (b - xc), beta);
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::pareto_one(double alpha) {
  require(alpha > 0.0, "pareto_one: alpha must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::pareto_one;
  impl->label = "pareto_one";
  impl->analytic = Monotone::decreasing;
  impl->params = {{"alpha", alpha}};
  impl->support = {alpha, kInf};
  impl->h = [alpha](double x) { return x < alpha ? 0.0 : alpha / x; };
  impl->H = [alpha](double x) {
    return x <= alpha ? 0.0 : alpha * std::log(x / alpha);
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::marshall_olkin(const HazardModel& base, double tilt) {
  require(tilt > 0.0, "marshall_olkin: tilt must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::marshall_olkin;
  impl->label = "marshall_olkin";
  impl->analytic = Monotone::unknown;
  impl->params = {{"alpha", tilt}};
  impl->support = base.support();
  auto base_ptr = std::make_shared<const HazardModel>(base);
  impl->base = base_ptr;
  const double bar_alpha = 1.0 - tilt;
  impl->h = [base_ptr, bar_alpha](double x) {
    return base_ptr->hazard(x) / (1.0 - bar_alpha * base_ptr->survival(x));
  };
  impl->H = [base_ptr, bar_alpha, tilt](double x) {
    if (x <= base_ptr->support().lo) return 0.0;
    return base_ptr->cumulative_hazard(x) - std::log(tilt) +
           std::log(1.0 - bar_alpha * base_ptr->survival(x));
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::proportional(const HazardModel& base, double theta) {
  require(theta > 0.0, "proportional: theta must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::custom;
  impl->label = "proportional(" + base.label() + ")";
  impl->analytic = base.analytic_monotonicity();
  impl->params = {{"theta", theta}};
  impl->support = base.support();
  auto base_ptr = std::make_shared<const HazardModel>(base);
  impl->base = base_ptr;
  impl->h = [base_ptr, theta](double x) { return theta * base_ptr->hazard(x); };
  impl->H = [base_ptr, theta](double x) {
    return theta * base_ptr->cumulative_hazard(x);
  };
  return HazardModel(std::move(impl));
}

HazardModel HazardModel::from_function(std::function<double(double)> hazard,
                                       Interval support, std::string label,
                                       Monotone analytic,
                                       std::function<double(double)> cumulative_hazard) {
  require(static_cast<bool>(hazard), "from_function: hazard evaluator required");
  require(support.lo >= 0.0 && support.lo < support.hi,
          "from_function: invalid support");
  auto impl = std::make_shared<Impl>();
  impl->family = HazardFamily::custom;
  impl->label = std::move(label);
  impl->analytic = analytic;
  impl->support = support;
  impl->h = std::move(hazard);
  if (cumulative_hazard) {
    impl->H = std::move(cumulative_hazard);
  } else {
    const auto h = impl->h;
    const double lo = support.lo;
    impl->H = [h, lo](double x) {
      if (x <= lo) return 0.0;
      return integrate(h, lo, x).value;
    };
  }
  return HazardModel(std::move(impl));
}

double HazardModel::hazard(double x) const { return impl_->h(x); }
double HazardModel::cumulative_hazard(double x) const { return impl_->H(x); }
double HazardModel::survival(double x) const {
  return std::exp(-impl_->H(x));
}
double HazardModel::density(double x) const { return hazard(x) * survival(x); }
Interval HazardModel::support() const { return impl_->support; }
HazardFamily HazardModel::family() const { return impl_->family; }
Monotone HazardModel::analytic_monotonicity() const { return impl_->analytic; }
const std::string& HazardModel::label() const { return impl_->label; }
const std::vector<std::pair<std::string, double>>& HazardModel::params() const {
  return impl_->params;
}
double HazardModel::param(const std::string& name) const {
  for (const auto& [key, value] : impl_->params) {
    if (key == name) return value;
  }
  throw ValidationError("HazardModel: unknown parameter " + name);
}
const HazardModel* HazardModel::base() const { return impl_->base.get(); }

// ---------------------------------------------------------------------------
// WeightFunction

struct WeightFunction::Impl {
  WeightFamily family = WeightFamily::custom;
  std::string label;
  Monotone direction = Monotone::unknown;
  std::vector<std::pair<std::string, double>> params;
  std::function<double(double)> w;
  std::function<double(double)> W;  // closed-form cumulative when available
  std::shared_ptr<const HazardModel> base;
};

WeightFunction WeightFunction::constant() {
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::constant;
  impl->label = "constant";
  impl->direction = Monotone::constant;
  impl->w = [](double) { return 1.0; };
  impl->W = [](double x) { return std::max(0.0, x); };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::power(double c) {
  if (!(c > -1.0)) {
    throw ValidationError("weight not locally integrable at 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::power;
  impl->label = "power";
  impl->direction = c > 0.0   ? Monotone::increasing
                    : c < 0.0 ? Monotone::decreasing
                              : Monotone::constant;
  impl->params = {{"c", c}};
  impl->w = [c](double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return c > 0.0 ? 0.0 : (c == 0.0 ? 1.0 : kInf);
    return std::pow(x, c);
  };
  impl->W = [c](double x) {
    return x <= 0.0 ? 0.0 : std::pow(x, c + 1.0) / (c + 1.0);
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::exponential(double n) {
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::exponential;
  impl->label = "exponential";
  impl->direction = n > 0.0   ? Monotone::increasing
                    : n < 0.0 ? Monotone::decreasing
                              : Monotone::constant;
  impl->params = {{"n", n}};
  impl->w = [n](double x) { return std::exp(n * x); };
  impl->W = [n](double x) {
    if (x <= 0.0) return 0.0;
    return n == 0.0 ? x : std::expm1(n * x) / n;
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::one_minus_exponential(double n) {
  require(n < 0.0, "one_minus_exponential: n must be < 0");
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::one_minus_exponential;
  impl->label = "one_minus_exponential";
  impl->direction = Monotone::increasing;
  impl->params = {{"n", n}};
  impl->w = [n](double x) { return x <= 0.0 ? 0.0 : -std::expm1(n * x); };
  impl->W = [n](double x) {
    if (x <= 0.0) return 0.0;
    return x - std::expm1(n * x) / n;
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::marshall_olkin_tilt(const HazardModel& base,
                                                   double alpha) {
  require(alpha > 0.0, "marshall_olkin_tilt: alpha must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::marshall_olkin_tilt;
  impl->label = "marshall_olkin_tilt";
  impl->direction = alpha < 1.0   ? Monotone::decreasing
                    : alpha > 1.0 ? Monotone::increasing
                                  : Monotone::constant;
  impl->params = {{"alpha", alpha}};
  auto base_ptr = std::make_shared<const HazardModel>(base);
  impl->base = base_ptr;
  const double bar_alpha = 1.0 - alpha;
  impl->w = [base_ptr, bar_alpha](double x) {
    return 1.0 / (1.0 - bar_alpha * base_ptr->survival(x));
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::kies_ratio(double a, double b) {
  require(a >= 0.0, "kies_ratio: a must be >= 0");
  require(a < b, "kies_ratio: requires a < b");
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::kies_ratio;
  impl->label = "kies_ratio";
  impl->direction = Monotone::increasing;
  impl->params = {{"a", a}, {"b", b}};
  const double clamp_hi = b - 1e-12 * (b - a);
  impl->w = [a, b, clamp_hi](double x) {
    if (x <= a) return 0.0;
    const double xc = std::min(x, clamp_hi);
    return (xc - a) / (b - xc);
  };
  impl->W = [a, b, clamp_hi](double x) {
    if (x <= a) return 0.0;
    const double xc = std::min(x, clamp_hi);
    return (b - a) * std::log((b - a) / (b - xc)) - (xc - a);
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::tabulated(std::vector<double> grid,
                                         std::vector<double> values) {
  require(grid.size() >= 2 && grid.size() == values.size(),
          "tabulated: need >= 2 matching samples");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(values[i] >= 0.0, "tabulated: values must be >= 0");
    if (i > 0) require(grid[i] > grid[i - 1], "tabulated: grid must be ascending");
  }
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::tabulated;
  impl->label = "tabulated";
  {
    bool nondec = true;
    bool noninc = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
      nondec = nondec && values[i] >= values[i - 1];
      noninc = noninc && values[i] <= values[i - 1];
    }
    impl->direction = (nondec && noninc) ? Monotone::constant
                      : nondec           ? Monotone::increasing
                      : noninc           ? Monotone::decreasing
                                         : Monotone::non_monotone;
  }
  // Trapezoid prefix sums measured from 0 with constant extrapolation.
  std::vector<double> prefix(grid.size());
  prefix[0] = values[0] * std::max(0.0, grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    prefix[i] = prefix[i - 1] +
                0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  auto xs = std::make_shared<std::vector<double>>(std::move(grid));
  auto ys = std::make_shared<std::vector<double>>(std::move(values));
  auto ps = std::make_shared<std::vector<double>>(std::move(prefix));
  impl->w = [xs, ys](double x) {
    if (x <= xs->front()) return ys->front();
    if (x >= xs->back()) return ys->back();
    const auto it = std::upper_bound(xs->begin(), xs->end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs->begin());
    const double t = (x - (*xs)[i - 1]) / ((*xs)[i] - (*xs)[i - 1]);
    return (*ys)[i - 1] + t * ((*ys)[i] - (*ys)[i - 1]);
  };
  auto w = impl->w;
  impl->W = [xs, ys, ps, w](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= xs->front()) return ys->front() * x;
    if (x >= xs->back()) {
      return ps->back() + ys->back() * (x - xs->back());
    }
    const auto it = std::upper_bound(xs->begin(), xs->end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs->begin());
    const double wl = (*ys)[i - 1];
    return (*ps)[i - 1] + 0.5 * (wl + w(x)) * (x - (*xs)[i - 1]);
  };
  return WeightFunction(std::move(impl));
}

WeightFunction WeightFunction::from_function(std::function<double(double)> w,
                                             Monotone direction,
                                             std::string label) {
  require(static_cast<bool>(w), "from_function: weight evaluator required");
  auto impl = std::make_shared<Impl>();
  impl->family = WeightFamily::custom;
  impl->label = std::move(label);
  impl->direction = direction;
  impl->w = std::move(w);
  return WeightFunction(std::move(impl));
}

double WeightFunction::operator()(double x) const { return impl_->w(x); }

double WeightFunction::cumulative(double x, const QuadratureConfig& cfg) const {
  if (x <= 0.0) return 0.0;
  if (impl_->W) return impl_->W(x);
  return integrate(impl_->w, 0.0, x, cfg).value;
}

bool WeightFunction::has_closed_form_cumulative() const {
  return static_cast<bool>(impl_->W);
}
Monotone WeightFunction::monotone_direction() const { return impl_->direction; }
WeightFamily WeightFunction::family() const { return impl_->family; }
const std::string& WeightFunction::label() const { return impl_->label; }
const std::vector<std::pair<std::string, double>>& WeightFunction::params() const {
  return impl_->params;
}
double WeightFunction::param(const std::string& name) const {
  for (const auto& [key, value] : impl_->params) {
    if (key == name) return value;
  }
  throw ValidationError("WeightFunction: unknown parameter " + name);
}
const HazardModel* WeightFunction::base() const { return impl_->base.get(); }

// ---------------------------------------------------------------------------
// Survival quantiles

double survival_quantile(const HazardModel& m, double p) {
  require(p >= 0.0 && p < 1.0, "survival_quantile: p must be in [0,1)");
  const double target = -std::log1p(-p);
  const Interval sup = m.support();
  if (target <= 0.0) return sup.lo;

  double lo = sup.lo;
  double hi;
  if (std::isfinite(sup.hi)) {
    hi = sup.hi - 1e-12 * (sup.hi - sup.lo);
    if (m.cumulative_hazard(hi) < target) {
      throw ValidationError("survival_quantile: defective distribution");
    }
  } else {
    hi = sup.lo + 1.0;
    int expansions = 0;
    while (m.cumulative_hazard(hi) < target) {
      hi = sup.lo + (hi - sup.lo) * 2.0;
      if (++expansions > 120 || hi > 1e30) {
        throw ValidationError(
            "survival_quantile: defective distribution (cumulative hazard "
            "stays below target)");
      }
    }
  }

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (m.cumulative_hazard(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

Interval default_scan_interval(const HazardModel& m) {
  return Interval{survival_quantile(m, 0.001), survival_quantile(m, 0.999)};
}

}  // namespace wfr
