#ifndef WFR_QUANTILE_HPP
#define WFR_QUANTILE_HPP

#include <functional>
#include <optional>
#include <string>

#include "wfr/characterization.hpp"
#include "wfr/models.hpp"
#include "wfr/weighted_means.hpp"

namespace wfr {

/// Denominator convention for the quantile means.  "paper" divides by Q(u)
/// as printed in the source formulas; "weighted_consistent" divides by
/// Q(u) - Q(0), which is what the weighted-mean machinery produces.  The
/// two differ exactly when Q(0) != 0 (e.g. Pareto-I).
enum class QuantileConvention { paper, weighted_consistent };

/// Quantile-side view of a lifetime: Q(u), the quantile density
/// q(u) = dQ/du and the hazard quantile h_q(u) = 1/((1-u) q(u)) on [0,1).
class QuantileModel {
 public:
  /// Q(u) = alpha * (1-u)^(-1/alpha); hazard alpha/x on [alpha, inf).
  static QuantileModel pareto_one(double alpha);
  /// Q(u) = (-ln(1-u))^(1/lambda).
  static QuantileModel weibull(double lambda);
  /// Q(u) = -ln(1-u)/lambda.
  static QuantileModel exponential(double lambda);
  /// Numerical inversion of a proper hazard model: Q solves the cumulative
  /// hazard equation H(Q) = -ln(1-u) by bracketed bisection (1e-12), and
  /// q(u) = 1/((1-u) h(Q(u))).  Defective models are rejected.
  static QuantileModel from_hazard(const HazardModel& m);
  static QuantileModel from_functions(std::function<double(double)> quantile,
                                      std::function<double(double)> density,
                                      std::string label);

  double quantile(double u) const;          // Q(u), 0 <= u < 1
  double quantile_density(double u) const;  // q(u), 0 < u < 1
  double hazard_quantile(double u) const;   // h_q(u)
  /// Inverse of Q by bisection (the fraction u with Q(u) = x).
  double inverse_quantile(double x) const;

  const std::string& label() const;
  const std::optional<HazardModel>& hazard_model() const;

 private:
  struct Impl;
  explicit QuantileModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Quantile arithmetic mean failure rate -ln(1-u) / Q(u).
double qa(const QuantileModel& qm, double u,
          QuantileConvention conv = QuantileConvention::paper);

/// Quantile geometric mean: exp( (1/Q(u)) int_0^u q(p) ln h_q(p) dp ).
MeanValue qg(const QuantileModel& qm, double u,
             QuantileConvention conv = QuantileConvention::paper,
             const QuadratureConfig& cfg = {});

/// Quantile harmonic mean: Q(u) / int_0^u (1-p) q(p)^2 dp; the integrand
/// equals q/h_q.  Divergence maps to 0 with the flag, as for whfr.
MeanValue qh(const QuantileModel& qm, double u,
             QuantileConvention conv = QuantileConvention::paper,
             const QuadratureConfig& cfg = {});

struct QuantileMeanTriple {
  double u = 0.0;
  MeanValue qa, qg, qh;
};

QuantileMeanTriple quantile_mean_triple(
    const QuantileModel& qm, double u,
    QuantileConvention conv = QuantileConvention::paper,
    const QuadratureConfig& cfg = {});

/// Computes the triple through the weighted-mean machinery with weight q
/// and hazard h_q on [0,1), then rescales denominators per the convention.
QuantileMeanTriple quantile_means_via_weighted(
    const QuantileModel& qm, double u,
    QuantileConvention conv = QuantileConvention::paper,
    const EvalOptions& opts = {});

/// Proportional-hazards transform on the quantile side:
/// Q_Y(u) = Q_X(1 - (1-u)^(1/theta)).  The report checks that the
/// distribution-side arithmetic means scale exactly by theta while the
/// quantile-side means do not: QA_Y(u) = theta QA_X(1-(1-u)^(1/theta)),
/// which differs from theta QA_X(u) unless the model is exponential.
struct PhmComparison {
  double theta = 1.0;
  double max_distribution_gap = 0.0;  // |A_Y - theta A_X| over the x grid
  double max_identity_gap = 0.0;      // reparametrized identity residual
  double max_quantile_gap = 0.0;      // max_u |QA_Y(u) - theta QA_X(u)|
};

struct PhmResult {
  QuantileModel transformed;
  PhmComparison comparison;
};

PhmResult phm_quantile(const QuantileModel& qm, double theta,
                       QuantileConvention conv = QuantileConvention::paper);

/// Quantile means of T(X) for a continuous nondecreasing invertible T with
/// derivative t_prime, using Q_{T(X)} = T(Q_X): the transformed quantile
/// density is T'(Q_X(p)) q(p).
struct TransformedQuantileMeans {
  std::function<double(double)> qa;
  std::function<double(double)> qg;
  std::function<double(double)> qh;
};

TransformedQuantileMeans transform_quantile(const QuantileModel& qm,
                                            std::function<double(double)> t,
                                            std::function<double(double)> t_prime,
                                            const QuadratureConfig& cfg = {});

/// Quantile function recovered from proportionality mean(u) = ratio * h_q(u)
/// for the weight q:
///   arithmetic: Q(u) = (1/(ratio k))^ratio (ln(a_const/(1-u)))^ratio
///   geometric:  Q(u) = (ln(e/ratio)/k)^m (ln(a_const/(1-u)))^m,
///               m = 1/ln(e/ratio)
/// The harmonic form duplicates the geometric one in the source material;
/// it is gated behind enable_harmonic_form and off by default.
QuantileModel recover_quantile_from_proportionality(MeanKind which, double ratio,
                                                    double k, double a_const,
                                                    bool enable_harmonic_form = false);

}  // namespace wfr

#endif  // WFR_QUANTILE_HPP
