#include "wfr/quantile.hpp"

#include <cmath>
#include <memory>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_u(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw ValidationError("quantile means: u must be in (0,1)");
  }
}

}  // namespace

struct QuantileModel::Impl {
  std::string label;
  std::function<double(double)> Q;
  std::function<double(double)> q;
  std::optional<HazardModel> hazard;
};

QuantileModel QuantileModel::pareto_one(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("pareto_one: alpha must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->label = "pareto_one";
  impl->Q = [alpha](double u) { return alpha * std::pow(1.0 - u, -1.0 / alpha); };
  impl->q = [alpha](double u) { return std::pow(1.0 - u, -1.0 / alpha - 1.0); };
  impl->hazard = HazardModel::pareto_one(alpha);
  return QuantileModel(std::move(impl));
}

QuantileModel QuantileModel::weibull(double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("weibull quantile: lambda must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->label = "weibull";
  impl->Q = [lambda](double u) {
    return std::pow(-std::log1p(-u), 1.0 / lambda);
  };
  impl->q = [lambda](double u) {
    const double s = -std::log1p(-u);
    return std::pow(s, 1.0 / lambda - 1.0) / (lambda * (1.0 - u));
  };
  impl->hazard = HazardModel::weibull(1.0, lambda);
  return QuantileModel(std::move(impl));
}

QuantileModel QuantileModel::exponential(double lambda) {
  if (!(lambda > 0.0)) {
    throw ValidationError("exponential quantile: lambda must be > 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->label = "exponential";
  impl->Q = [lambda](double u) { return -std::log1p(-u) / lambda; };
  impl->q = [lambda](double u) { return 1.0 / (lambda * (1.0 - u)); };
  impl->hazard = HazardModel::exponential(lambda);
  return QuantileModel(std::move(impl));
}

QuantileModel QuantileModel::from_hazard(const HazardModel& m) {
  try {
    survival_quantile(m, 1.0 - 1e-9);  // defective models fail here
  } catch (const ValidationError&) {
    throw ValidationError(
        "from_hazard: defective distribution, quantile undefined near u -> 1");
  }
  auto impl = std::make_shared<Impl>();
  impl->label = "derived(" + m.label() + ")";
  const HazardModel model = m;
  impl->Q = [model](double u) { return survival_quantile(model, u); };
  impl->q = [model](double u) {
    const double x = survival_quantile(model, u);
    const double h = model.hazard(x);
    return 1.0 / ((1.0 - u) * h);
  };
  impl->hazard = m;
  return QuantileModel(std::move(impl));
}

QuantileModel QuantileModel::from_functions(std::function<double(double)> quantile,
                                            std::function<double(double)> density,
                                            std::string label) {
  if (!quantile || !density) {
    throw ValidationError("from_functions: evaluators required");
  }
  auto impl = std::make_shared<Impl>();
  impl->label = std::move(label);
  impl->Q = std::move(quantile);
  impl->q = std::move(density);
  return QuantileModel(std::move(impl));
}

double QuantileModel::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw ValidationError("quantile: u must be in [0,1)");
  }
  return impl_->Q(u);
}

double QuantileModel::quantile_density(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw ValidationError("quantile_density: u must be in [0,1)");
  }
  return impl_->q(u);  // u = 0 yields the limit, possibly infinite
}

double QuantileModel::hazard_quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw ValidationError("hazard_quantile: u must be in [0,1)");
  }
  return 1.0 / ((1.0 - u) * impl_->q(u));
}

double QuantileModel::inverse_quantile(double x) const {
  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  if (x <= impl_->Q(lo)) return 0.0;
  if (x >= impl_->Q(hi)) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (impl_->Q(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

const std::string& QuantileModel::label() const { return impl_->label; }
const std::optional<HazardModel>& QuantileModel::hazard_model() const {
  return impl_->hazard;
}

namespace {

double denominator(const QuantileModel& qm, double u, QuantileConvention conv) {
  const double Qu = qm.quantile(u);
  if (conv == QuantileConvention::paper) return Qu;
  return Qu - qm.quantile(0.0);
}

}  // namespace

double qa(const QuantileModel& qm, double u, QuantileConvention conv) {
  require_u(u);
  const double den = denominator(qm, u, conv);
  if (!(den > 0.0)) {
    throw DegenerateError("qa: quantile denominator is zero at u=" +
                          std::to_string(u));
  }
  return -std::log1p(-u) / den;
}

MeanValue qg(const QuantileModel& qm, double u, QuantileConvention conv,
             const QuadratureConfig& cfg) {
  require_u(u);
  const double den = denominator(qm, u, conv);
  if (!(den > 0.0)) {
    throw DegenerateError("qg: quantile denominator is zero");
  }
  const QuantileModel m = qm;
  const auto integrand = [m](double p) {
    return m.quantile_density(p) * std::log(m.hazard_quantile(p));
  };
  try {
    const double L = integrate(integrand, 0.0, u, cfg).value;
    return MeanValue{std::exp(L / den), false};
  } catch (const AccuracyError&) {
    const DivergenceProbe probe = probe_left_divergence(integrand, 0.0, u, cfg);
    if (probe.likely_divergent) return MeanValue{kNaN, true};
    throw;
  }
}

MeanValue qh(const QuantileModel& qm, double u, QuantileConvention conv,
             const QuadratureConfig& cfg) {
  require_u(u);
  const double num = denominator(qm, u, conv);
  if (!(num > 0.0)) {
    throw DegenerateError("qh: quantile numerator is zero");
  }
  const QuantileModel m = qm;
  const auto integrand = [m](double p) {
    const double qp = m.quantile_density(p);
    return (1.0 - p) * qp * qp;
  };
  try {
    const double D = integrate(integrand, 0.0, u, cfg).value;
    return MeanValue{num / D, false};
  } catch (const AccuracyError&) {
    const DivergenceProbe probe = probe_left_divergence(integrand, 0.0, u, cfg);
    if (probe.likely_divergent) return MeanValue{0.0, true};
    throw;
  }
}

QuantileMeanTriple quantile_mean_triple(const QuantileModel& qm, double u,
                                        QuantileConvention conv,
                                        const QuadratureConfig& cfg) {
  QuantileMeanTriple t;
  t.u = u;
  t.qa = MeanValue{qa(qm, u, conv), false};
  t.qg = qg(qm, u, conv, cfg);
  t.qh = qh(qm, u, conv, cfg);
  return t;
}

QuantileMeanTriple quantile_means_via_weighted(const QuantileModel& qm, double u,
                                               QuantileConvention conv,
                                               const EvalOptions& opts) {
  require_u(u);
  const QuantileModel m = qm;
  const HazardModel hq = HazardModel::from_function(
      [m](double p) { return m.hazard_quantile(p); }, Interval{0.0, 1.0},
      "hazard-quantile(" + qm.label() + ")");
  const WeightFunction weight = WeightFunction::from_function(
      [m](double p) { return m.quantile_density(p); }, Monotone::unknown,
      "quantile-density(" + qm.label() + ")");
  const WeightedModel wm(hq, weight);

  QuantileMeanTriple t;
  t.u = u;
  t.qa = wafr(wm, u, opts);
  t.qg = wgfr(wm, u, opts);
  t.qh = whfr(wm, u, opts);

  if (conv == QuantileConvention::paper) {
    // The weighted route divides by W(u) = Q(u) - Q(0); the printed
    // convention divides by Q(u).
    const double Wu = qm.quantile(u) - qm.quantile(0.0);
    const double Qu = qm.quantile(u);
    const double rescale = Wu / Qu;
    if (!t.qa.divergent) t.qa.value *= rescale;
    if (!t.qg.divergent) t.qg.value = std::pow(t.qg.value, rescale);
    if (!t.qh.divergent) t.qh.value /= rescale;
  }
  return t;
}

PhmResult phm_quantile(const QuantileModel& qm, double theta,
                       QuantileConvention conv) {
  if (!(theta > 0.0)) throw ValidationError("phm_quantile: theta must be > 0");
  const QuantileModel base = qm;
  auto reparam = [theta](double u) {
    return 1.0 - std::pow(1.0 - u, 1.0 / theta);
  };
  auto Qy = [base, reparam](double u) { return base.quantile(reparam(u)); };
  auto qy = [base, reparam, theta](double u) {
    const double inner = reparam(u);
    return base.quantile_density(inner) *
           std::pow(1.0 - u, 1.0 / theta - 1.0) / theta;
  };
  QuantileModel transformed = QuantileModel::from_functions(
      Qy, qy, "phm(" + qm.label() + ", theta=" + std::to_string(theta) + ")");

  PhmComparison cmp;
  cmp.theta = theta;

  // Distribution side: A(x) = -ln(survival)/x computed through independent
  // quantile inversions of X and Y.
  for (int i = 1; i <= 9; ++i) {
    const double u = 0.05 + 0.9 * static_cast<double>(i - 1) / 8.0;
    const double x = qm.quantile(u);
    if (!(x > 0.0)) continue;
    const double ux = qm.inverse_quantile(x);
    const double uy = transformed.inverse_quantile(x);
    const double ax = -std::log1p(-ux) / x;
    const double ay = -std::log1p(-uy) / x;
    cmp.max_distribution_gap =
        std::max(cmp.max_distribution_gap, std::abs(ay - theta * ax));
  }

  for (int i = 1; i <= 99; ++i) {
    const double u = static_cast<double>(i) / 100.0;
    const double qa_y = qa(transformed, u, conv);
    const double qa_x = qa(qm, u, conv);
    const double qa_x_reparam = qa(qm, reparam(u), conv);
    cmp.max_identity_gap =
        std::max(cmp.max_identity_gap, std::abs(qa_y - theta * qa_x_reparam));
    cmp.max_quantile_gap =
        std::max(cmp.max_quantile_gap, std::abs(qa_y - theta * qa_x));
  }
  return PhmResult{std::move(transformed), cmp};
}

TransformedQuantileMeans transform_quantile(const QuantileModel& qm,
                                            std::function<double(double)> t,
                                            std::function<double(double)> t_prime,
                                            const QuadratureConfig& cfg) {
  if (!t || !t_prime) {
    throw ValidationError("transform_quantile: transform and derivative required");
  }
  for (int i = 1; i <= 99; ++i) {
    const double u = static_cast<double>(i) / 100.0;
    if (t_prime(qm.quantile(u)) < 0.0) {
      throw ValidationError(
          "transform_quantile: transform is not non-decreasing on the range of Q");
    }
  }
  const QuantileModel m = qm;
  auto q_t = [m, t_prime](double p) {
    return t_prime(m.quantile(p)) * m.quantile_density(p);
  };
  auto Q_t = [m, t](double u) { return t(m.quantile(u)); };

  TransformedQuantileMeans out;
  out.qa = [Q_t](double u) {
    require_u(u);
    return -std::log1p(-u) / Q_t(u);
  };
  out.qg = [Q_t, q_t, cfg](double u) {
    require_u(u);
    const auto integrand = [q_t](double p) {
      const double qp = q_t(p);
      return qp * std::log((1.0 - p) * qp);
    };
    const double L = integrate(integrand, 0.0, u, cfg).value;
    return std::exp(-L / Q_t(u));
  };
  out.qh = [Q_t, q_t, cfg](double u) {
    require_u(u);
    const auto integrand = [q_t](double p) {
      const double qp = q_t(p);
      return (1.0 - p) * qp * qp;
    };
    return Q_t(u) / integrate(integrand, 0.0, u, cfg).value;
  };
  return out;
}

QuantileModel recover_quantile_from_proportionality(MeanKind which, double ratio,
                                                    double k, double a_const,
                                                    bool enable_harmonic_form) {
  if (!(ratio > 0.0 && k > 0.0 && a_const > 0.0)) {
    throw ValidationError(
        "recover_quantile_from_proportionality: ratio, k, a_const must be > 0");
  }
  double coeff = 0.0;
  double expo = 0.0;
  switch (which) {
    case MeanKind::arithmetic:
      coeff = std::pow(1.0 / (ratio * k), ratio);
      expo = ratio;
      break;
    case MeanKind::harmonic:
      if (!enable_harmonic_form) {
        throw ValidationError(
            "recover_quantile_from_proportionality: harmonic form is gated off "
            "(its printed formula duplicates the geometric one)");
      }
      [[fallthrough]];
    case MeanKind::geometric: {
      const double lg = std::log(std::exp(1.0) / ratio);
      if (!(lg > 0.0)) {
        throw ValidationError(
            "recover_quantile_from_proportionality: requires ratio < e");
      }
      coeff = std::pow(lg / k, 1.0 / lg);
      expo = 1.0 / lg;
      break;
    }
  }
  const double lnA = std::log(a_const);
  auto Q = [coeff, expo, lnA](double u) {
    return coeff * std::pow(lnA - std::log1p(-u), expo);
  };
  auto q = [coeff, expo, lnA](double u) {
    return coeff * expo * std::pow(lnA - std::log1p(-u), expo - 1.0) / (1.0 - u);
  };
  return QuantileModel::from_functions(Q, q,
                                       std::string("recovered-quantile-") +
                                           to_string(which));
}

}  // namespace wfr
