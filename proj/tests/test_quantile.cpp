#include "wfr/quantile.hpp"

#include <cmath>

#include <doctest.h>

#include "oracle.hpp"
#include "wfr/errors.hpp"

using namespace wfr;

TEST_CASE("quantile_from_hazard inverts the survival function") {
  {
    const QuantileModel q = QuantileModel::from_hazard(HazardModel::exponential(1.0));
    CHECK(q.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(q.quantile(0.0) == doctest::Approx(0.0));
  }
  {
    const QuantileModel q = QuantileModel::from_hazard(HazardModel::weibull(1.0, 2.0));
    CHECK(q.quantile(1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-9));
    // closed-form inverse sqrt(-ln(1-u)) across a grid
    for (int i = 1; i <= 9; ++i) {
      const double u = 0.1 * i;
      CHECK(q.quantile(u) ==
            doctest::Approx(std::sqrt(-std::log1p(-u))).epsilon(1e-9));
    }
  }
  {
    const QuantileModel q = QuantileModel::from_hazard(HazardModel::pareto_one(2.0));
    CHECK(q.quantile(0.0) == doctest::Approx(2.0));  // support lower end
  }
}

TEST_CASE("defective hazard models are rejected on the quantile side") {
  // weighted hazard 2 t e^{-t} has bounded cumulative: survival floors at e^{-2}
  const WeightedModel defective(HazardModel::weibull(1.0, 2.0),
                                WeightFunction::exponential(-1.0));
  const WeightedModel copy = defective;
  const HazardModel as_hazard = HazardModel::from_function(
      [copy](double x) { return copy.weighted_hazard(x); }, Interval{},
      "weighted-hazard");
  CHECK_THROWS_AS(QuantileModel::from_hazard(as_hazard), ValidationError);
}

TEST_CASE("round trip Q(F(x)) = x for derived models") {
  const QuantileModel q =
      QuantileModel::from_hazard(HazardModel::additive_weibull(0.5, 1.3, 0.7, 2.2));
  for (double x : {0.3, 0.9, 1.7}) {
    const double u = q.inverse_quantile(x);
    CHECK(q.quantile(u) == doctest::Approx(x).epsilon(1e-8));
  }
}

TEST_CASE("definitional identity q (1-u) h_q = 1") {
  const QuantileModel models[] = {
      QuantileModel::pareto_one(2.0), QuantileModel::weibull(2.0),
      QuantileModel::exponential(0.5),
      QuantileModel::from_hazard(HazardModel::weibull(1.3, 1.6))};
  for (const auto& q : models) {
    for (int i = 1; i <= 9; ++i) {
      const double u = 0.1 * i;
      CHECK(q.quantile_density(u) * (1.0 - u) * q.hazard_quantile(u) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("qa: pinned values") {
  const QuantileModel exp_half = QuantileModel::exponential(0.5);
  for (double u : {0.1, 0.5, 0.9}) {
    CHECK(qa(exp_half, u) == doctest::Approx(0.5).epsilon(1e-12));
  }

  const QuantileModel pareto = QuantileModel::pareto_one(2.0);
  // -(1-u)^(1/alpha) ln(1-u)/alpha at u=0.5, alpha=2
  CHECK(qa(pareto, 0.5) == doctest::Approx(0.2450645358671368).epsilon(1e-10));
  // cross-check against the quantile-function route
  CHECK(qa(pareto, 0.5) ==
        doctest::Approx(-std::log(0.5) / (2.0 * std::pow(0.5, -0.5))).epsilon(1e-12));

  // weibull quantile: QA = Q^(lambda-1)
  const QuantileModel weib = QuantileModel::weibull(2.0);
  for (double u : {0.2, 0.5, 0.8}) {
    CHECK(qa(weib, u) ==
          doctest::Approx(std::pow(weib.quantile(u), 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("qg: pinned values against the quadrature oracle") {
  const QuantileModel exp1 = QuantileModel::exponential(1.3);
  for (double u : {0.2, 0.7}) {
    CHECK(qg(exp1, u).value == doctest::Approx(1.3).epsilon(1e-10));
  }

  const QuantileModel pareto = QuantileModel::pareto_one(2.0);
  const MeanValue g = qg(pareto, 0.5);
  REQUIRE_FALSE(g.divergent);
  CHECK(g.value == doctest::Approx(0.9477349812376965).epsilon(1e-8));
  // independent oracle: tanh-sinh on the defining integral
  const double ref = std::exp(
      oracle::integrate(
          [&pareto](double p) {
            return pareto.quantile_density(p) * std::log(pareto.hazard_quantile(p));
          },
          0.0, 0.5) /
      pareto.quantile(0.5));
  CHECK(g.value == doctest::Approx(ref).epsilon(1e-8));

  // small-u limit: qg tends to h_q(0+)
  const QuantileModel weib = QuantileModel::weibull(2.0);
  const double hq0 = weib.hazard_quantile(1e-9);
  CHECK(qg(weib, 1e-6).value == doctest::Approx(hq0).epsilon(5e-2));
  CHECK(qg(pareto, 1e-6).value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("qh: pinned values and internal consistency") {
  const QuantileModel exp1 = QuantileModel::exponential(0.8);
  for (double u : {0.3, 0.6}) {
    CHECK(qh(exp1, u).value == doctest::Approx(0.8).epsilon(1e-10));
  }

  const QuantileModel pareto = QuantileModel::pareto_one(2.0);
  const MeanValue h = qh(pareto, 0.5);
  REQUIRE_FALSE(h.divergent);
  CHECK(h.value == doctest::Approx(2.8284271247461901).epsilon(1e-10));

  // the two integrand forms (1-p)q^2 and q/h_q agree
  for (double u : {0.25, 0.5, 0.75}) {
    const double form1 = oracle::integrate(
        [&pareto](double p) {
          const double qp = pareto.quantile_density(p);
          return (1.0 - p) * qp * qp;
        },
        0.0, u);
    const double form2 = oracle::integrate(
        [&pareto](double p) {
          return pareto.quantile_density(p) / pareto.hazard_quantile(p);
        },
        0.0, u);
    CHECK(form1 == doctest::Approx(form2).epsilon(1e-10));
  }
}

TEST_CASE("pareto closed forms match the generic quadrature route") {
  for (double alpha : {1.5, 2.0, 5.0}) {
    const QuantileModel pareto = QuantileModel::pareto_one(alpha);
    for (int i = 1; i <= 9; ++i) {
      const double u = 0.1 * i;
      const double s = std::pow(1.0 - u, 1.0 / alpha);
      const double qa_closed = -s * std::log1p(-u) / alpha;
      const double qg_closed = std::exp(1.0 - s) * s;
      const double qh_closed = -2.0 * s / (s * s - 1.0);
      CHECK(qa(pareto, u) == doctest::Approx(qa_closed).epsilon(1e-8));
      CHECK(qg(pareto, u).value == doctest::Approx(qg_closed).epsilon(1e-8));
      CHECK(qh(pareto, u).value == doctest::Approx(qh_closed).epsilon(1e-8));
    }
  }
}

TEST_CASE("weibull quantile satisfies QA = Q^(lambda-1)") {
  for (double lambda : {0.5, 2.0, 3.0}) {
    const QuantileModel weib = QuantileModel::weibull(lambda);
    for (int i = 1; i <= 9; ++i) {
      const double u = 0.1 * i;
      CHECK(qa(weib, u) ==
            doctest::Approx(std::pow(weib.quantile(u), lambda - 1.0)).epsilon(1e-8));
    }
  }
}

TEST_CASE("exponential constancy against non-exponential spread") {
  // exponential: every quantile mean is flat at the rate
  const QuantileModel exp_model = QuantileModel::exponential(0.5);
  double spread = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double u = i / 100.0;
    spread = std::max(spread, std::abs(qa(exp_model, u) - 0.5));
    spread = std::max(spread, std::abs(qg(exp_model, u).value - 0.5));
    spread = std::max(spread, std::abs(qh(exp_model, u).value - 0.5));
  }
  CHECK(spread <= 1e-9);

  // non-exponential battery members move by more than 1e-3 somewhere
  for (const auto& qm : {QuantileModel::pareto_one(2.0), QuantileModel::weibull(2.0),
                         QuantileModel::weibull(0.5)}) {
    double lo = 1e300, hi = -1e300;
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      const double v = qa(qm, u);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo > 1e-3);
  }
}

TEST_CASE("quantile means via the weighted machinery") {
  {
    const QuantileModel exp_model = QuantileModel::exponential(1.0);
    const auto t = quantile_means_via_weighted(exp_model, 0.5);
    CHECK(t.qa.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t.qg.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t.qh.value == doctest::Approx(1.0).epsilon(1e-8));
  }
  {
    // Q(0) = 0: both routes agree without any convention adjustment
    const QuantileModel weib = QuantileModel::weibull(2.0);
    for (double u : {0.3, 0.6}) {
      const auto t = quantile_means_via_weighted(weib, u);
      CHECK(t.qa.value == doctest::Approx(qa(weib, u)).epsilon(1e-8));
      CHECK(t.qg.value == doctest::Approx(qg(weib, u).value).epsilon(1e-8));
    }
  }
  {
    // Q(0) = alpha != 0 exposes the denominator discrepancy; under the
    // paper convention the weighted route is rescaled to match
    const QuantileModel pareto = QuantileModel::pareto_one(2.0);
    const double u = 0.5;
    const auto paper = quantile_means_via_weighted(pareto, u);
    CHECK(paper.qa.value == doctest::Approx(qa(pareto, u)).epsilon(1e-8));
    CHECK(paper.qg.value == doctest::Approx(qg(pareto, u).value).epsilon(1e-7));
    CHECK(paper.qh.value == doctest::Approx(qh(pareto, u).value).epsilon(1e-8));

    const auto wc = quantile_means_via_weighted(
        pareto, u, QuantileConvention::weighted_consistent);
    const double W = pareto.quantile(u) - pareto.quantile(0.0);
    CHECK(wc.qa.value == doctest::Approx(-std::log1p(-u) / W).epsilon(1e-8));
    CHECK(wc.qa.value != doctest::Approx(paper.qa.value).epsilon(1e-3));
  }
}

TEST_CASE("phm: distribution side scales, quantile side does not") {
  {
    const QuantileModel pareto = QuantileModel::pareto_one(2.0);
    const auto result = phm_quantile(pareto, 2.0);
    CHECK(result.comparison.max_distribution_gap <= 1e-8);
    CHECK(result.comparison.max_identity_gap <= 1e-9);
    CHECK(result.comparison.max_quantile_gap > 1e-2);
    // pinned: Q_Y(u) = 2 (1-u)^(-1/4)
    CHECK(result.transformed.quantile(0.5) ==
          doctest::Approx(2.0 * std::pow(0.5, -0.25)).epsilon(1e-10));
  }
  {
    // theta = 1 leaves the model unchanged
    const QuantileModel pareto = QuantileModel::pareto_one(2.0);
    const auto result = phm_quantile(pareto, 1.0);
    CHECK(result.comparison.max_quantile_gap <= 1e-10);
    CHECK(result.comparison.max_identity_gap <= 1e-10);
  }
  {
    // exponential: constant hazard quantile, both sides scale
    const QuantileModel exp_model = QuantileModel::exponential(1.0);
    const auto result = phm_quantile(exp_model, 3.0);
    CHECK(result.comparison.max_distribution_gap <= 1e-8);
    CHECK(result.comparison.max_quantile_gap <= 1e-8);
  }
}

TEST_CASE("transform_quantile: pinned cases") {
  const QuantileModel weib = QuantileModel::weibull(2.0);
  {
    // identity transform reproduces the direct means (lambda = 1.5 keeps
    // the harmonic integral convergent)
    const QuantileModel weib15 = QuantileModel::weibull(1.5);
    const auto same = transform_quantile(
        weib15, [](double x) { return x; }, [](double) { return 1.0; });
    for (double u : {0.3, 0.7}) {
      CHECK(same.qa(u) == doctest::Approx(qa(weib15, u)).epsilon(1e-9));
      CHECK(same.qg(u) == doctest::Approx(qg(weib15, u).value).epsilon(1e-7));
      CHECK(same.qh(u) == doctest::Approx(qh(weib15, u).value).epsilon(1e-7));
    }
  }
  {
    // T(x) = x^2 turns the lambda=2 weibull quantile into exponential(1)
    const auto squared = transform_quantile(
        weib, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    for (double u : {0.2, 0.5, 0.8}) {
      CHECK(squared.qa(u) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(squared.qg(u) == doctest::Approx(1.0).epsilon(1e-7));
      CHECK(squared.qh(u) == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
  {
    // scaling T(x) = c x divides QA by c
    const double c = 2.5;
    const auto scaled = transform_quantile(
        weib, [c](double x) { return c * x; }, [c](double) { return c; });
    for (double u : {0.3, 0.6}) {
      CHECK(scaled.qa(u) == doctest::Approx(qa(weib, u) / c).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(transform_quantile(weib, [](double x) { return -x; },
                                     [](double) { return -1.0; }),
                  ValidationError);
}

TEST_CASE("recover_quantile_from_proportionality: boundary and round trip") {
  {
    // ratio 1, a_const 1, k 1: the unit exponential
    const QuantileModel q = recover_quantile_from_proportionality(
        MeanKind::arithmetic, 1.0, 1.0, 1.0);
    for (double u : {0.2, 0.6}) {
      CHECK(q.quantile(u) == doctest::Approx(-std::log1p(-u)).epsilon(1e-12));
      CHECK(qa(q, u) == doctest::Approx(q.hazard_quantile(u)).epsilon(1e-10));
    }
  }
  {
    // ratio 2: Q = (1/2)^2 (ln 1/(1-u))^2, round-trip ratio 2
    const QuantileModel q = recover_quantile_from_proportionality(
        MeanKind::arithmetic, 2.0, 1.0, 1.0);
    CHECK(q.quantile(0.5) ==
          doctest::Approx(0.25 * std::pow(std::log(2.0), 2.0)).epsilon(1e-12));
    for (double u : {0.2, 0.5, 0.9}) {
      CHECK(qa(q, u) / q.hazard_quantile(u) == doctest::Approx(2.0).epsilon(1e-6));
    }
  }
  {
    // geometric recovery round trip at a_const = 1
    const QuantileModel q = recover_quantile_from_proportionality(
        MeanKind::geometric, 0.8, 1.0, 1.0);
    for (double u : {0.3, 0.7}) {
      const MeanValue g = qg(q, u);
      REQUIRE_FALSE(g.divergent);
      CHECK(g.value / q.hazard_quantile(u) == doctest::Approx(0.8).epsilon(1e-6));
    }
  }
  {
    // a_const != 1 shifts Q(0) away from zero (a generalized quantile form)
    const QuantileModel q = recover_quantile_from_proportionality(
        MeanKind::arithmetic, 1.0, 1.0, 2.0);
    CHECK(q.quantile(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  // the harmonic form is gated off by default
  CHECK_THROWS_AS(
      recover_quantile_from_proportionality(MeanKind::harmonic, 0.5, 1.0, 1.0),
      ValidationError);
  CHECK_NOTHROW(recover_quantile_from_proportionality(MeanKind::harmonic, 0.5, 1.0,
                                                      1.0, true));
}

TEST_CASE("hazard-quantile monotonicity transmits to the quantile means") {
  // The mean-value argument covers the weighted-mean form with denominator
  // Q(u) - Q(0); models with Q(0) = 0 make both conventions coincide.
  struct Case {
    QuantileModel qm;
    Monotone expected;
  };
  const Case cases[] = {
      {QuantileModel::pareto_one(2.0), Monotone::decreasing},
      {QuantileModel::weibull(2.0), Monotone::increasing},
      {QuantileModel::weibull(0.5), Monotone::decreasing},
  };
  for (const auto& c : cases) {
    const QuantileModel qm = c.qm;
    const auto hq_verdict = scan_monotonicity(
        [qm](double u) { return qm.hazard_quantile(u); }, 0.02, 0.95, 64);
    CHECK(hq_verdict.label == c.expected);
    const auto qa_verdict = scan_monotonicity(
        [qm](double u) {
          return qa(qm, u, QuantileConvention::weighted_consistent);
        },
        0.02, 0.95, 64);
    // constant counts as transmitted
    CHECK((qa_verdict.label == c.expected || qa_verdict.label == Monotone::constant));
  }
  // With Q(0) != 0 the printed convention escapes the argument: the pareto
  // QA rises and then turns near u = 1 - e^{-2} even though h_q decreases.
  const QuantileModel pareto = QuantileModel::pareto_one(2.0);
  const auto printed = scan_monotonicity(
      [pareto](double u) { return qa(pareto, u); }, 0.02, 0.95, 64);
  CHECK(printed.label == Monotone::non_monotone);
  REQUIRE_FALSE(printed.change_points.empty());
  CHECK(printed.change_points[0] ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-3));
}
