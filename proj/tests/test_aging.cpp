#include "wfr/aging.hpp"

#include <cmath>

#include <doctest.h>

#include "wfr/errors.hpp"

using namespace wfr;

TEST_CASE("classify: increasing weibull under constant weight") {
  const WeightedModel m(HazardModel::weibull(1.0, 2.0), WeightFunction::constant());
  const AgingReport r = classify(m, 0.1, 4.0, 64);
  CHECK(r.has(AgingClass::IFR));
  CHECK(r.has(AgingClass::IwAFR));
  CHECK(r.has(AgingClass::IwGFR));
  CHECK(r.hfr_excluded);  // int 1/h diverges at 0
  CHECK_FALSE(r.has(AgingClass::IwHFR));
  CHECK(r.transmission_consistent);
  CHECK(inclusion_chain_violations(r).empty());
}

TEST_CASE("classify: decreasing weibull under constant weight") {
  const WeightedModel m(HazardModel::weibull(1.0, 0.5), WeightFunction::constant());
  const AgingReport r = classify(m, 0.1, 4.0, 64);
  CHECK(r.has(AgingClass::DFR));
  CHECK(r.has(AgingClass::DwAFR));
  CHECK(r.has(AgingClass::DwGFR));
  CHECK(r.has(AgingClass::DwHFR));
  CHECK(r.transmission_consistent);
  CHECK(inclusion_chain_violations(r).empty());
}

TEST_CASE("classify: humped weighted hazard, monotone weighted means") {
  // Increasing base hazard keeps every weighted mean increasing, while the
  // weighted hazard itself rises to (beta-1)/|n| = 2 and falls, and the
  // plain AFR of the weighted variable turns as well.
  const WeightedModel m(HazardModel::weibull(1.0, 3.0),
                        WeightFunction::exponential(-1.0));
  const AgingReport r = classify(m, 0.1, 12.0, 96);
  CHECK(r.hazard.label == Monotone::increasing);
  CHECK(r.weighted_hazard.label == Monotone::non_monotone);
  REQUIRE(r.weighted_hazard.change_points.size() == 1);
  CHECK(r.weighted_hazard.change_points[0] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(r.afr.label == Monotone::increasing);
  CHECK(r.afr_of_weighted.label == Monotone::non_monotone);
  CHECK(r.has(AgingClass::IwAFR));
  // IFR/DFR labels ride on the base hazard; the weighted variable's own
  // failure rate (non-monotone here) is reported separately.
  CHECK(r.has(AgingClass::IFR));
  CHECK(r.transmission_consistent);
}

TEST_CASE("classify: exponential model is constant in every measure") {
  const WeightedModel m(HazardModel::exponential(1.0), WeightFunction::power(2.0));
  const AgingReport r = classify(m, 0.1, 3.0, 64);
  CHECK(r.hazard.label == Monotone::constant);
  CHECK(r.afr.label == Monotone::constant);
  CHECK(r.has(AgingClass::IFR));
  CHECK(r.has(AgingClass::DFR));
  CHECK(r.has(AgingClass::IwAFR));
  CHECK(r.has(AgingClass::DwAFR));
  CHECK(inclusion_chain_violations(r).empty());
}

TEST_CASE("classify default interval reports where it scanned") {
  const WeightedModel m(HazardModel::weibull(1.0, 2.0), WeightFunction::constant());
  const AgingReport r = classify(m, 64);
  CHECK(r.lo > 0.0);
  CHECK(r.hi > r.lo);
  CHECK(r.grid_size == 64);
}

TEST_CASE("wijsman inequality check: pinned cases") {
  const auto id = [](double) { return 1.0; };
  const auto lin = [](double u) { return u; };
  // (int u^2)(int 1) - (int u)(int u) = 1/3 - 1/4 = 1/12 > 0
  const BoundReport same =
      wijsman_inequality_check(lin, id, lin, id, 1.0, Relation::geq);
  CHECK(same.passed);
  CHECK_FALSE(same.skipped);

  // opposite directions flip the sign
  const auto dec = [](double u) { return std::exp(-u); };
  const BoundReport opposite =
      wijsman_inequality_check(lin, id, dec, id, 1.0, Relation::leq);
  CHECK(opposite.passed);

  // constant ratio g1/g2 forces equality
  const auto two = [](double) { return 2.0; };
  const BoundReport equal =
      wijsman_inequality_check(lin, id, two, id, 1.0, Relation::equal);
  CHECK(equal.passed);
  CHECK(equal.max_violation <= 1e-10);

  CHECK_THROWS_AS(wijsman_inequality_check(
                      [](double) { return 0.0; }, id, lin, id, 1.0, Relation::geq),
                  DegenerateError);
}

TEST_CASE("bound_check_means: four direction combinations") {
  const double grid_inc[] = {0.6, 1.0, 1.7, 2.4, 3.0};

  // increasing weight, increasing hazard: weighted means dominate
  {
    const WeightedModel m(HazardModel::weibull(1.0, 2.0), WeightFunction::power(1.0));
    const auto reports = bound_check_means(m, grid_inc);
    for (const auto& r : reports) {
      if (!r.skipped) {
        CHECK(r.expected == Relation::geq);
        CHECK(r.passed);
      }
    }
    // h = 2x drops below 1 near zero, inside the integration range: the
    // geometric comparison must be skipped
    CHECK(reports[1].skipped);
    // pinned instance for the arithmetic comparison: A^w(2) = 8/3 >= A(2) = 2
    CHECK(wafr(m, 2.0).value >= 2.0);
  }
  // hazards floored at 1 keep the geometric comparison alive
  {
    const WeightedModel inc_floor(HazardModel::additive_weibull(1.0, 1.0, 0.5, 2.0),
                                  WeightFunction::power(1.0));
    const auto inc_reports = bound_check_means(inc_floor, grid_inc);
    REQUIRE_FALSE(inc_reports[1].skipped);
    CHECK(inc_reports[1].expected == Relation::geq);
    CHECK(inc_reports[1].passed);

    const WeightedModel dec_floor(HazardModel::additive_weibull(1.0, 1.0, 0.5, 0.5),
                                  WeightFunction::power(1.0));
    const auto dec_reports = bound_check_means(dec_floor, grid_inc);
    REQUIRE_FALSE(dec_reports[1].skipped);
    CHECK(dec_reports[1].expected == Relation::leq);
    CHECK(dec_reports[1].passed);
  }
  // decreasing weight, increasing hazard: weighted means sit below
  {
    const WeightedModel m(HazardModel::weibull(1.0, 2.0),
                          WeightFunction::exponential(-1.0));
    const auto reports = bound_check_means(m, grid_inc);
    for (const auto& r : reports) {
      if (!r.skipped) {
        CHECK(r.expected == Relation::leq);
        CHECK(r.passed);
      }
    }
  }
  // increasing weight, decreasing hazard: below again, geometric skipped
  {
    const WeightedModel m(HazardModel::weibull(1.0, 0.5), WeightFunction::power(1.0));
    const auto reports = bound_check_means(m, grid_inc);
    CHECK(reports[0].expected == Relation::leq);
    CHECK(reports[0].passed);
    CHECK(reports[1].skipped);  // h(x) = 0.5/sqrt(x) < 1 on the grid
    CHECK(reports[2].passed);
  }
  // decreasing weight, decreasing hazard: dominates again
  {
    const WeightedModel m(HazardModel::weibull(1.0, 0.5),
                          WeightFunction::exponential(-1.0));
    const auto reports = bound_check_means(m, grid_inc);
    CHECK(reports[0].expected == Relation::geq);
    CHECK(reports[0].passed);
    CHECK(reports[1].skipped);
    CHECK(reports[2].passed);
  }
  // constant hazard: equality in everything
  {
    const WeightedModel m(HazardModel::exponential(1.3), WeightFunction::power(1.0));
    const auto reports = bound_check_means(m, grid_inc);
    for (const auto& r : reports) {
      if (!r.skipped) {
        CHECK(r.expected == Relation::equal);
        CHECK(r.max_violation <= 1e-10);
      }
    }
  }
}

TEST_CASE("sequence_weight_bounds: consistency at k=1") {
  const WeightedModel m(HazardModel::weibull(1.0, 2.0),
                        WeightFunction::exponential(-0.5));
  const double grid[] = {0.5, 1.0, 2.0};
  const auto reports = sequence_weight_bounds(m, 1, grid);
  for (const auto& r : reports) {
    if (!r.skipped) CHECK(r.passed);
  }
  // ratio identity must hold tightly
  CHECK(reports[1].id == "seq-gfr-ratio-identity");
  CHECK_FALSE(reports[1].skipped);
  CHECK(reports[1].max_violation <= 1e-8 * (1.0 + reports[1].scale));
}

TEST_CASE("sequence_weight_bounds: decreasing sub-unit weight, k=2") {
  // w = e^{-x} < 1 decreasing against an increasing hazard: the repeated
  // weighting pulls the arithmetic mean below the plain one
  const WeightedModel m(HazardModel::weibull(1.0, 2.0),
                        WeightFunction::exponential(-1.0));
  const double grid[] = {0.5, 1.0, 2.0, 3.0};
  const auto reports = sequence_weight_bounds(m, 2, grid);
  const BoundReport& afr_vs_plain = reports[4];
  REQUIRE_FALSE(afr_vs_plain.skipped);
  CHECK(afr_vs_plain.expected == Relation::leq);
  CHECK(afr_vs_plain.passed);
  for (const auto& r : reports) {
    if (!r.skipped) CHECK(r.passed);
  }
}

TEST_CASE("sequence_weight_bounds: growing super-unit weight") {
  // w = e^x > 1: the geometric ratio exp(k int w ln w / int w) stays above
  // exp(k x / 2), both sides exactly computable
  const WeightedModel m(HazardModel::weibull(1.0, 2.0),
                        WeightFunction::exponential(1.0));
  const double grid[] = {0.5, 1.0, 2.0};
  const auto reports = sequence_weight_bounds(m, 2, grid);
  const BoundReport& growth = reports[2];
  REQUIRE_FALSE(growth.skipped);
  CHECK(growth.passed);

  const double x = 1.0, k = 2.0;
  const double ratio =
      std::exp(k * ((x - 1.0) * std::exp(x) + 1.0) / (std::exp(x) - 1.0));
  const double bound = std::exp(k * x / 2.0);
  CHECK(ratio >= bound);
}

TEST_CASE("star-shaped survival bound for monotone weighted AFR") {
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double grid[] = {0.5, 1.0, 2.0, 4.0};
  {
    const WeightedModel m(HazardModel::weibull(1.0, 2.0), WeightFunction::constant());
    const BoundReport r = star_shaped_check(m, alphas, grid);
    REQUIRE_FALSE(r.skipped);
    CHECK(r.expected == Relation::geq);
    CHECK(r.passed);
    // pinned instance: survival(1) = e^{-1} >= (e^{-4})^{1/2} = e^{-2}
    CHECK(m.weighted_survival(1.0) >=
          std::pow(m.weighted_survival(2.0),
                   m.cumulative_weight(1.0) / m.cumulative_weight(2.0)));
  }
  {
    const WeightedModel m(HazardModel::weibull(1.0, 0.5), WeightFunction::constant());
    const BoundReport r = star_shaped_check(m, alphas, grid);
    REQUIRE_FALSE(r.skipped);
    CHECK(r.expected == Relation::leq);
    CHECK(r.passed);
  }
  {
    // non-monotone weighted AFR: inconclusive, skipped
    const WeightedModel m(HazardModel::additive_weibull(1.0, 0.4, 0.3, 3.0),
                          WeightFunction::constant());
    const BoundReport r = star_shaped_check(m, alphas, grid);
    CHECK(r.skipped);
  }
}

TEST_CASE("log-hazard star-shaped bound for monotone weighted GFR") {
  const double alphas[] = {0.25, 0.5, 0.75, 1.0};
  const double grid[] = {0.5, 1.0, 2.0, 4.0};
  const WeightedModel inc(HazardModel::weibull(1.0, 2.0), WeightFunction::constant());
  const BoundReport r1 = gfr_star_shaped_check(inc, alphas, grid);
  REQUIRE_FALSE(r1.skipped);
  CHECK(r1.expected == Relation::leq);
  CHECK(r1.passed);

  const WeightedModel dec(HazardModel::weibull(1.0, 0.5), WeightFunction::constant());
  const BoundReport r2 = gfr_star_shaped_check(dec, alphas, grid);
  REQUIRE_FALSE(r2.skipped);
  CHECK(r2.expected == Relation::geq);
  CHECK(r2.passed);
}

TEST_CASE("transmission: monotone hazards hand their direction to the means") {
  const WeightedModel battery[] = {
      {HazardModel::weibull(1.2, 1.7), WeightFunction::power(1.5)},
      {HazardModel::weibull(1.0, 0.5), WeightFunction::exponential(-0.8)},
      {HazardModel::additive_weibull(0.5, 1.3, 0.7, 2.2),
       WeightFunction::one_minus_exponential(-1.2)},
      {HazardModel::kies(0.0, 6.0, 1.0, 1.4), WeightFunction::exponential(-0.8)},
      {HazardModel::exponential(0.8), WeightFunction::power(1.5)},
  };
  for (const auto& m : battery) {
    const AgingReport r = classify(m, 0.2, 3.5, 64);
    CHECK(r.transmission_consistent);
    CHECK(inclusion_chain_violations(r).empty());
  }
}

TEST_CASE("derivative identity W dA/dx = w (h - A) at sampled points") {
  const WeightedModel models[] = {
      {HazardModel::weibull(1.0, 2.0), WeightFunction::exponential(-1.0)},
      {HazardModel::weibull(1.3, 1.5), WeightFunction::power(1.0)},
  };
  for (const auto& m : models) {
    for (double x : {0.5, 1.0, 2.0}) {
      const double dx = 1e-5 * x;
      const double dA = (wafr(m, x + dx).value - wafr(m, x - dx).value) / (2.0 * dx);
      const double lhs = m.cumulative_weight(x) * dA;
      const double rhs =
          m.weight()(x) * (m.hazard_model().hazard(x) - wafr(m, x).value);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
  }
}
