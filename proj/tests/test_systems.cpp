#include "wfr/systems.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "wfr/errors.hpp"

using namespace wfr;

TEST_CASE("mixture hazard: pinned examples") {
  {
    const auto mix = make_mixture(
        {HazardModel::exponential(1.0), HazardModel::exponential(1.0)}, {0.5, 0.5});
    for (double x : {0.0, 0.5, 2.0}) {
      CHECK(mixture_hazard(mix, x).hazard == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  {
    const auto mix = make_mixture(
        {HazardModel::exponential(1.0), HazardModel::exponential(2.0)}, {0.5, 0.5});
    const auto at1 = mixture_hazard(mix, 1.0);
    CHECK(at1.effective_weights[0] == doctest::Approx(0.7310585786300049).epsilon(1e-12));
    CHECK(at1.hazard == doctest::Approx(1.2689414213699951).epsilon(1e-12));

    const auto at0 = mixture_hazard(mix, 0.0);
    CHECK(at0.effective_weights[0] == doctest::Approx(0.5));
    CHECK(at0.hazard == doctest::Approx(1.5));
  }
}

TEST_CASE("mixture validation") {
  CHECK_THROWS_AS(make_mixture({HazardModel::exponential(1.0)}, {0.9}),
                  ValidationError);
  CHECK_THROWS_AS(make_mixture({HazardModel::exponential(1.0),
                                HazardModel::exponential(2.0)},
                               {0.6, 0.6}),
                  ValidationError);
  CHECK_THROWS_AS(make_mixture({}, {}), ValidationError);
}

TEST_CASE("series hazard: pinned examples") {
  {
    WeightedSeriesSpec spec;
    spec.components.push_back(
        {HazardModel::weibull(1.0, 2.0), WeightFunction::constant()});
    const HazardModel same = HazardModel::weibull(1.0, 2.0);
    for (double x : {0.5, 1.5}) {
      CHECK(series_hazard(spec, x) == doctest::Approx(same.hazard(x)));
    }
  }
  {
    // 3 t^2 e^{-t} + 2 t (1 - e^{-t}) at t = 1
    const auto spec = nonclosure_series(1.0, 3.0, 1.0, 2.0, -1.0);
    CHECK(series_hazard(spec, 1.0) ==
          doctest::Approx(3.0 * std::exp(-1.0) + 2.0 * (1.0 - std::exp(-1.0)))
              .epsilon(1e-12));
    CHECK(series_hazard(spec, 1.0) == doctest::Approx(2.3678794411714423).epsilon(1e-12));
  }
  {
    // complementary weights with equal hazards collapse to that hazard
    WeightedSeriesSpec spec;
    spec.components.push_back(
        {HazardModel::weibull(1.0, 2.0), WeightFunction::exponential(-1.0)});
    spec.components.push_back({HazardModel::weibull(1.0, 2.0),
                               WeightFunction::one_minus_exponential(-1.0)});
    const HazardModel same = HazardModel::weibull(1.0, 2.0);
    for (double x : {0.5, 1.0, 3.0}) {
      CHECK(series_hazard(spec, x) == doctest::Approx(same.hazard(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("mixture_as_series reproduces the mixture hazard") {
  const auto mix = make_mixture(
      {HazardModel::exponential(1.0), HazardModel::exponential(2.0)}, {0.5, 0.5});
  const auto series = mixture_as_series(mix);
  CHECK(series.weights_sum_to_one);
  for (int i = 0; i <= 25; ++i) {
    const double x = 0.2 * i;
    CHECK(std::abs(series_hazard(series, x) - mixture_hazard(mix, x).hazard) <=
          1e-12);
  }
}

TEST_CASE("single-component mixture carries unit weight") {
  const auto mix = make_mixture({HazardModel::weibull(1.0, 1.5)}, {1.0});
  const auto series = mixture_as_series(mix);
  for (double x : {0.0, 1.0, 4.0}) {
    CHECK(series.components[0].weight(x) == doctest::Approx(1.0));
  }
}

TEST_CASE("three-component weibull mixture: weights sum to one on a grid") {
  const auto mix = make_mixture({HazardModel::weibull(1.0, 0.8),
                                 HazardModel::weibull(0.7, 1.5),
                                 HazardModel::weibull(1.2, 2.5)},
                                {0.25, 0.35, 0.4});
  const auto series = mixture_as_series(mix);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  CHECK(max_weight_sum_gap(series, grid) <= 1e-9);
}

TEST_CASE("random mixtures match their series reformulation") {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<int> n_dist(2, 4);
  std::uniform_real_distribution<double> param(0.4, 2.5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = n_dist(rng);
    std::vector<HazardModel> components;
    std::vector<double> proportions;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i % 2 == 0) {
        components.push_back(HazardModel::exponential(param(rng)));
      } else {
        components.push_back(HazardModel::weibull(param(rng), param(rng)));
      }
      proportions.push_back(param(rng));
      total += proportions.back();
    }
    double acc = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      proportions[static_cast<std::size_t>(i)] /= total;
      acc += proportions[static_cast<std::size_t>(i)];
    }
    proportions[static_cast<std::size_t>(n - 1)] = 1.0 - acc;

    const auto mix = make_mixture(components, proportions);
    const auto series = mixture_as_series(mix);

    // grid up to the abscissa where 99% of the fastest component is gone
    double hi = 0.0;
    for (const auto& c : components) hi = std::max(hi, survival_quantile(c, 0.99));
    double max_gap = 0.0;
    double max_weight_gap = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double x = hi * i / 32.0;
      const auto eval = mixture_hazard(mix, x);
      max_gap = std::max(max_gap,
                         std::abs(series_hazard(series, x) - eval.hazard));
      double sum = 0.0;
      for (double p : eval.effective_weights) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-15);
        sum += p;
      }
      max_weight_gap = std::max(max_weight_gap, std::abs(sum - 1.0));
    }
    CHECK(max_gap <= 1e-12);
    CHECK(max_weight_gap == 0.0);  // exact by construction
  }
}

TEST_CASE("mixture support exhaustion raises") {
  const auto mix = make_mixture({HazardModel::kies(0.0, 1.0, 1.0, 2.0),
                                 HazardModel::kies(0.0, 1.0, 2.0, 1.5)},
                                {0.5, 0.5});
  CHECK_THROWS_AS(mixture_hazard(mix, 1.0), DegenerateError);
}

TEST_CASE("nonclosure witness search finds the expected region") {
  NonclosureSearchBox box;
  box.betas = {5.0};
  box.bs = {1.1};
  box.ns = {-1.0};
  box.scan_grid = 64;
  const auto witness = find_afr_nonclosure_witness(box);
  REQUIRE(witness.found);
  CHECK(witness.beta == 5.0);
  CHECK(witness.b == 1.1);
  CHECK(witness.n == -1.0);

  // components are Iw-AFR yet their weighted hazards are humped
  CHECK(witness.component1.has(AgingClass::IwAFR));
  CHECK(witness.component2.has(AgingClass::IwAFR));
  CHECK(witness.component1.weighted_hazard.label == Monotone::non_monotone);

  // the system's plain AFR turns, confirmed on the refined grid
  CHECK(witness.system_afr.label == Monotone::non_monotone);
  CHECK_FALSE(witness.system_afr.change_points.empty());
  CHECK(witness.system_afr_refined.label == Monotone::non_monotone);
  CHECK_FALSE(witness.system_afr_refined.change_points.empty());
  // refined change point agrees with the coarse one
  CHECK(witness.system_afr_refined.change_points[0] ==
        doctest::Approx(witness.system_afr.change_points[0]).epsilon(1e-2));
}

TEST_CASE("negative control: equal hazards with complementary weights") {
  // the system hazard collapses to the common increasing hazard, so its
  // plain AFR stays monotone and no witness exists
  const auto spec = nonclosure_series(1.0, 2.0, 1.0, 2.0, -1.0);
  const auto h = [&spec](double t) { return series_hazard(spec, t); };
  const auto verdict = scan_monotonicity(h, 0.05, 20.0, 96);
  CHECK(verdict.label == Monotone::increasing);
}

TEST_CASE("search box validation") {
  NonclosureSearchBox box;
  box.betas = {0.5};
  CHECK_THROWS_AS(find_afr_nonclosure_witness(box), ValidationError);
  NonclosureSearchBox box2;
  box2.ns = {0.5};
  CHECK_THROWS_AS(find_afr_nonclosure_witness(box2), ValidationError);
}

TEST_CASE("exhausted box reports not-found instead of silent success") {
  NonclosureSearchBox box;
  box.betas = {1.2};  // too tame to generate a hump
  box.bs = {1.1};
  box.ns = {-0.1};
  box.scan_grid = 48;
  box.t_hi = 5.0;
  const auto witness = find_afr_nonclosure_witness(box);
  CHECK_FALSE(witness.found);
  CHECK(witness.combinations_tried == 1);
}
