#include "wfr/aging.hpp"

#include <algorithm>
#include <cmath>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

constexpr double kPassFactor = 1e-8;

bool direction_like(Monotone verdict, Monotone direction) {
  return verdict == direction || verdict == Monotone::constant;
}

MonotoneVerdict excluded_verdict(const char* why) {
  MonotoneVerdict v;
  v.label = Monotone::unknown;
  v.note = why;
  return v;
}

}  // namespace

const char* to_string(AgingClass c) noexcept {
  switch (c) {
    case AgingClass::IFR: return "IFR";
    case AgingClass::DFR: return "DFR";
    case AgingClass::IwAFR: return "Iw-AFR";
    case AgingClass::DwAFR: return "Dw-AFR";
    case AgingClass::IwGFR: return "Iw-GFR";
    case AgingClass::DwGFR: return "Dw-GFR";
    case AgingClass::IwHFR: return "Iw-HFR";
    case AgingClass::DwHFR: return "Dw-HFR";
  }
  return "?";
}

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::geq: return ">=";
    case Relation::leq: return "<=";
    case Relation::equal: return "==";
  }
  return "?";
}

AgingReport classify(const WeightedModel& m, double lo, double hi,
                     int grid_size, const EvalOptions& opts) {
  if (!(lo > 0.0 && lo < hi)) {
    throw ValidationError("classify: need 0 < lo < hi");
  }
  AgingReport report;
  report.lo = lo;
  report.hi = hi;
  report.grid_size = grid_size;

  const HazardModel hm = m.hazard_model();
  report.hazard = scan_monotonicity([hm](double x) { return hm.hazard(x); },
                                    lo, hi, grid_size);
  const WeightedModel wm = m;
  report.weighted_hazard = scan_monotonicity(
      [wm](double x) { return wm.weighted_hazard(x); }, lo, hi, grid_size);

  const std::vector<double> grid = make_grid(lo, hi, grid_size);
  const std::vector<MeanTriple> triples = mean_triple_grid(m, grid, opts);

  auto scan_mean = [&](auto pick, const char* name,
                       bool* excluded) -> MonotoneVerdict {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const MeanValue v = pick(triples[i]);
      if (v.divergent) {
        *excluded = true;
        report.notes.push_back(std::string(name) +
                               " divergent on the interval; excluded from labels");
        return excluded_verdict("divergent");
      }
      values[i] = v.value;
    }
    std::function<double(double)> refine = [&m, &opts, pick](double x) {
      MeanTriple t;
      t.x = x;
      t.afr = wafr(m, x, opts);
      t.gfr = wgfr(m, x, opts);
      t.hfr = whfr(m, x, opts);
      return pick(t).value;
    };
    return scan_monotone_values(grid, values, &refine);
  };

  bool dummy = false;
  report.afr = scan_mean([](const MeanTriple& t) { return t.afr; }, "A^w", &dummy);
  report.gfr = scan_mean([](const MeanTriple& t) { return t.gfr; }, "G^w",
                         &report.gfr_excluded);
  report.hfr = scan_mean([](const MeanTriple& t) { return t.hfr; }, "H^w",
                         &report.hfr_excluded);

  // Plain AFR of the weighted variable X^w, (1/t) int_0^t w h.
  {
    const std::vector<double> cumulative = integrate_to_grid(
        [wm](double u) { return wm.weighted_hazard(u); }, grid, opts.quad);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = cumulative[i] / grid[i];
    std::function<double(double)> refine = [wm, &opts](double x) {
      return integrate([wm](double u) { return wm.weighted_hazard(u); }, 0.0, x,
                       opts.quad)
                 .value /
             x;
    };
    report.afr_of_weighted = scan_monotone_values(grid, values, &refine);
  }

  auto add_labels = [&](Monotone verdict, AgingClass inc, AgingClass dec) {
    if (direction_like(verdict, Monotone::increasing)) report.labels.insert(inc);
    if (direction_like(verdict, Monotone::decreasing)) report.labels.insert(dec);
  };
  add_labels(report.hazard.label, AgingClass::IFR, AgingClass::DFR);
  add_labels(report.afr.label, AgingClass::IwAFR, AgingClass::DwAFR);
  if (!report.gfr_excluded) {
    add_labels(report.gfr.label, AgingClass::IwGFR, AgingClass::DwGFR);
  }
  if (!report.hfr_excluded) {
    add_labels(report.hfr.label, AgingClass::IwHFR, AgingClass::DwHFR);
  }

  // Monotone base hazard must hand its direction to every finite mean.
  if (report.hazard.label == Monotone::increasing ||
      report.hazard.label == Monotone::decreasing ||
      report.hazard.label == Monotone::constant) {
    auto check = [&](const MonotoneVerdict& v, bool excluded, const char* name) {
      if (excluded) return;
      const bool ok = report.hazard.label == Monotone::constant
                          ? v.label == Monotone::constant
                          : direction_like(v.label, report.hazard.label);
      if (!ok) {
        report.transmission_consistent = false;
        report.notes.push_back(std::string("transmission violated: hazard ") +
                               to_string(report.hazard.label) + " but " + name +
                               " " + to_string(v.label));
      }
    };
    check(report.afr, false, "A^w");
    check(report.gfr, report.gfr_excluded, "G^w");
    check(report.hfr, report.hfr_excluded, "H^w");
  }
  return report;
}

AgingReport classify(const WeightedModel& m, int grid_size, const EvalOptions& opts) {
  const Interval window = default_scan_interval(m.hazard_model());
  return classify(m, window.lo, window.hi, grid_size, opts);
}

std::vector<std::string> inclusion_chain_violations(const AgingReport& report) {
  std::vector<std::string> violations;
  struct Step {
    AgingClass from, to;
    bool excluded;
  };
  const Step steps[] = {
      {AgingClass::IFR, AgingClass::IwAFR, false},
      {AgingClass::IFR, AgingClass::IwGFR, report.gfr_excluded},
      {AgingClass::IFR, AgingClass::IwHFR, report.hfr_excluded},
      {AgingClass::IwAFR, AgingClass::IwGFR, report.gfr_excluded},
      {AgingClass::IwAFR, AgingClass::IwHFR, report.hfr_excluded},
      {AgingClass::IwGFR, AgingClass::IwHFR, report.hfr_excluded},
      {AgingClass::DFR, AgingClass::DwHFR, report.hfr_excluded},
      {AgingClass::DFR, AgingClass::DwGFR, report.gfr_excluded},
      {AgingClass::DFR, AgingClass::DwAFR, false},
      {AgingClass::DwHFR, AgingClass::DwGFR, report.gfr_excluded},
      {AgingClass::DwHFR, AgingClass::DwAFR, false},
      {AgingClass::DwGFR, AgingClass::DwAFR, false},
  };
  for (const Step& s : steps) {
    if (s.excluded) continue;
    if (report.has(s.from) && !report.has(s.to)) {
      violations.push_back(std::string(to_string(s.from)) + " without " +
                           to_string(s.to));
    }
  }
  return violations;
}

void BoundReport::record(double lhs, double rhs, double x) {
  double violation = 0.0;
  switch (expected) {
    case Relation::geq: violation = std::max(0.0, rhs - lhs); break;
    case Relation::leq: violation = std::max(0.0, lhs - rhs); break;
    case Relation::equal: violation = std::abs(lhs - rhs); break;
  }
  scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  if (violation > max_violation) {
    max_violation = violation;
    worst_x = x;
  }
}

void BoundReport::finalize() {
  passed = skipped || max_violation <= kPassFactor * (1.0 + scale);
}

BoundReport wijsman_inequality_check(const std::function<double(double)>& f1,
                                     const std::function<double(double)>& f2,
                                     const std::function<double(double)>& g1,
                                     const std::function<double(double)>& g2,
                                     double x, Relation expected,
                                     const QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw ValidationError("wijsman_inequality_check: x must be > 0");
  auto prod = [&](const std::function<double(double)>& p,
                  const std::function<double(double)>& q) {
    return integrate([&](double u) { return p(u) * q(u); }, 0.0, x, cfg).value;
  };
  const double i11 = prod(f1, g1);
  const double i22 = prod(f2, g2);
  const double i12 = prod(f1, g2);
  const double i21 = prod(f2, g1);
  if (!(i11 > 0.0) || !(i22 > 0.0)) {
    throw DegenerateError("wijsman_inequality_check: int f_i g_i must be positive");
  }
  BoundReport report;
  report.id = "integral-ratio-sign";
  report.expected = expected;
  report.record(i11 * i22, i12 * i21, x);
  report.finalize();
  return report;
}

namespace {

Monotone weight_direction(const WeightedModel& m, double lo, double hi) {
  const Monotone declared = m.weight().monotone_direction();
  if (declared != Monotone::unknown && declared != Monotone::non_monotone) {
    return declared;
  }
  const WeightFunction w = m.weight();
  return scan_monotonicity([w](double x) { return w(x); }, lo, hi, 200).label;
}

Monotone hazard_direction(const WeightedModel& m, double lo, double hi) {
  const Monotone analytic = m.hazard_model().analytic_monotonicity();
  if (analytic != Monotone::unknown && analytic != Monotone::non_monotone) {
    return analytic;
  }
  const HazardModel h = m.hazard_model();
  return scan_monotonicity([h](double x) { return h.hazard(x); }, lo, hi, 200).label;
}

// Constant counts as both directions: the lemma's equality case.
enum class Alignment { same, opposite, equality, inconclusive };

Alignment align(Monotone wdir, Monotone hdir) {
  if (wdir == Monotone::constant || hdir == Monotone::constant) {
    return Alignment::equality;
  }
  const bool w_ok = wdir == Monotone::increasing || wdir == Monotone::decreasing;
  const bool h_ok = hdir == Monotone::increasing || hdir == Monotone::decreasing;
  if (!w_ok || !h_ok) return Alignment::inconclusive;
  return wdir == hdir ? Alignment::same : Alignment::opposite;
}

Relation relation_for(Alignment a) {
  switch (a) {
    case Alignment::same: return Relation::geq;
    case Alignment::opposite: return Relation::leq;
    default: return Relation::equal;
  }
}

}  // namespace

std::vector<BoundReport> bound_check_means(const WeightedModel& m,
                                           std::span<const double> x_grid,
                                           const EvalOptions& opts) {
  if (x_grid.empty()) throw ValidationError("bound_check_means: empty grid");
  const double lo = x_grid.front() * 0.5;
  const double hi = x_grid.back();
  const Monotone wdir = weight_direction(m, std::max(lo, 1e-6), hi);
  const Monotone hdir = hazard_direction(m, std::max(lo, 1e-6), hi);
  const Alignment alignment = align(wdir, hdir);

  const WeightedModel plain(m.hazard_model(), WeightFunction::constant());

  std::vector<BoundReport> reports(3);
  reports[0].id = "afr-weighted-vs-plain";
  reports[1].id = "gfr-weighted-vs-plain";
  reports[2].id = "hfr-weighted-vs-plain";
  for (auto& r : reports) r.expected = relation_for(alignment);

  if (alignment == Alignment::inconclusive) {
    for (auto& r : reports) {
      r.skipped = true;
      r.reason = std::string("inconclusive: weight ") + to_string(wdir) +
                 ", hazard " + to_string(hdir);
      r.finalize();
    }
    return reports;
  }

  // Geometric comparison requires h >= 1 over the whole integration range
  // (0, x_max], so the scan starts essentially at zero.
  const HazardModel hm = m.hazard_model();
  bool hazard_ge_one = true;
  for (int i = 0; i <= 200; ++i) {
    const double x = hi * (1e-6 + (1.0 - 1e-6) * static_cast<double>(i) / 200.0);
    if (hm.hazard(x) < 1.0) {
      hazard_ge_one = false;
      break;
    }
  }
  if (!hazard_ge_one) {
    reports[1].skipped = true;
    reports[1].reason = "hazard < 1 somewhere on the interval; geometric "
                        "comparison not applicable";
  }

  for (double x : x_grid) {
    const MeanValue aw = wafr(m, x, opts);
    const MeanValue a = wafr(plain, x, opts);
    if (!aw.divergent && !a.divergent) reports[0].record(aw.value, a.value, x);

    if (!reports[1].skipped) {
      const MeanValue gw = wgfr(m, x, opts);
      const MeanValue g = wgfr(plain, x, opts);
      if (!gw.divergent && !g.divergent) reports[1].record(gw.value, g.value, x);
    }
    const MeanValue hw = whfr(m, x, opts);
    const MeanValue h = whfr(plain, x, opts);
    if (hw.divergent || h.divergent) {
      if (!reports[2].skipped) {
        reports[2].skipped = true;
        reports[2].reason = "harmonic mean divergent on the grid";
      }
    } else {
      reports[2].record(hw.value, h.value, x);
    }
  }
  for (auto& r : reports) r.finalize();
  return reports;
}

std::vector<BoundReport> sequence_weight_bounds(const WeightedModel& m, int k,
                                                std::span<const double> x_grid,
                                                const EvalOptions& opts) {
  if (k < 1) throw ValidationError("sequence_weight_bounds: k must be >= 1");
  if (x_grid.empty()) throw ValidationError("sequence_weight_bounds: empty grid");

  const HazardModel hm = m.hazard_model();
  const WeightFunction w = m.weight();
  const double lo = std::max(x_grid.front() * 0.5, 1e-6);
  const double hi = x_grid.back();
  const Monotone wdir = weight_direction(m, lo, hi);
  const Monotone hdir = hazard_direction(m, lo, hi);
  const Alignment alignment = align(wdir, hdir);

  double w_min = std::numeric_limits<double>::infinity();
  double w_max = 0.0;
  double h_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / 200.0;
    w_min = std::min(w_min, w(x));
    w_max = std::max(w_max, w(x));
    h_min = std::min(h_min, hm.hazard(x));
  }

  const double kd = static_cast<double>(k);
  auto cum = [&](const std::function<double(double)>& f, double x) {
    return integrate(f, 0.0, x, opts.quad).value;
  };
  auto pow_w = [w](double exponent) {
    return [w, exponent](double u) {
      const double wu = w(u);
      return wu == 0.0 ? 0.0 : std::pow(wu, exponent);
    };
  };
  const auto f_w = pow_w(1.0);
  const auto f_wk1 = pow_w(kd + 1.0);
  const auto f_w1k = pow_w(1.0 - kd);
  auto f_wh = [w, hm](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu * hm.hazard(u);
  };
  auto f_wk1h = [w, hm, kd](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : std::pow(wu, kd + 1.0) * hm.hazard(u);
  };
  auto f_wlnw = [w](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu * std::log(wu);
  };
  auto f_lnw = [w](double u) { return std::log(w(u)); };
  auto f_lnh = [hm](double u) { return std::log(hm.hazard(u)); };
  auto f_wlnh = [w, hm](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu * std::log(hm.hazard(u));
  };
  auto f_wln_wkh = [w, hm, kd](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0
                     : wu * (kd * std::log(wu) + std::log(hm.hazard(u)));
  };
  auto f_winvh = [w, hm](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu / hm.hazard(u);
  };
  auto f_w1kinvh = [w, hm, kd](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : std::pow(wu, 1.0 - kd) / hm.hazard(u);
  };
  auto f_invh = [hm](double u) { return 1.0 / hm.hazard(u); };

  std::vector<BoundReport> reports(7);
  BoundReport& afr_ratio = reports[0];
  BoundReport& gfr_identity = reports[1];
  BoundReport& gfr_growth = reports[2];
  BoundReport& hfr_ratio = reports[3];
  BoundReport& afr_vs_plain = reports[4];
  BoundReport& hfr_vs_plain = reports[5];
  BoundReport& gfr_vs_plain = reports[6];
  afr_ratio.id = "seq-afr-ratio";
  gfr_identity.id = "seq-gfr-ratio-identity";
  gfr_growth.id = "seq-gfr-lower-bound";
  hfr_ratio.id = "seq-hfr-ratio";
  afr_vs_plain.id = "seq-afr-vs-plain";
  hfr_vs_plain.id = "seq-hfr-vs-plain";
  gfr_vs_plain.id = "seq-gfr-vs-plain";

  auto skip = [](BoundReport& r, const std::string& why) {
    r.skipped = true;
    r.reason = why;
  };

  if (alignment == Alignment::inconclusive) {
    for (auto& r : {&afr_ratio, &hfr_ratio, &afr_vs_plain, &hfr_vs_plain,
                    &gfr_vs_plain}) {
      skip(*r, "monotone directions inconclusive");
    }
  } else {
    afr_ratio.expected = relation_for(alignment);
    // Harmonic ratio flips: same direction of w^k and 1/h means w and h
    // run opposite.
    hfr_ratio.expected =
        alignment == Alignment::equality
            ? Relation::equal
            : (alignment == Alignment::opposite ? Relation::geq : Relation::leq);
  }
  gfr_identity.expected = Relation::equal;
  gfr_growth.expected = Relation::geq;
  if (!(w_min > 1.0)) {
    skip(gfr_growth, "requires w > 1 on the interval");
  }

  const bool same = alignment == Alignment::same || alignment == Alignment::equality;
  const bool opposite =
      alignment == Alignment::opposite || alignment == Alignment::equality;
  if (same && w_min >= 1.0) {
    afr_vs_plain.expected = Relation::geq;
    hfr_vs_plain.expected = Relation::geq;
  } else if (opposite && w_max <= 1.0) {
    afr_vs_plain.expected = Relation::leq;
    hfr_vs_plain.expected = Relation::leq;
  } else if (!afr_vs_plain.skipped) {
    skip(afr_vs_plain, "needs same direction with w >= 1 or opposite with w <= 1");
    skip(hfr_vs_plain, afr_vs_plain.reason);
  }
  if (!(same && h_min >= 1.0 && w_min >= 1.0)) {
    skip(gfr_vs_plain, "requires h >= 1, w >= 1 and same direction");
  } else {
    gfr_vs_plain.expected = Relation::geq;
  }

  // w^{1-k} integrals can diverge at 0 (power weights with k >= 2).
  auto guarded = [&](const std::function<double(double)>& f, double x,
                     bool* diverged) {
    try {
      return cum(f, x);
    } catch (const AccuracyError&) {
      *diverged = true;
      return 0.0;
    }
  };

  for (double x : x_grid) {
    const double I_w = cum(f_w, x);
    const double I_wh = cum(f_wh, x);
    const double I_wk1 = cum(f_wk1, x);
    const double I_wk1h = cum(f_wk1h, x);
    const double I_wlnw = cum(f_wlnw, x);
    const double I_wlnh = cum(f_wlnh, x);
    const double I_wln_wkh = cum(f_wln_wkh, x);

    if (!afr_ratio.skipped) {
      afr_ratio.record(I_wk1h / I_wh, I_wk1 / I_w, x);
    }
    gfr_identity.record(std::exp(I_wln_wkh / I_w) / std::exp(I_wlnh / I_w),
                        std::exp(kd * I_wlnw / I_w), x);
    if (!gfr_growth.skipped) {
      const double I_lnw = cum(f_lnw, x);
      gfr_growth.record(std::exp(kd * I_wlnw / I_w),
                        std::exp(kd / x * I_lnw), x);
    }
    if (!hfr_ratio.skipped || !hfr_vs_plain.skipped) {
      bool div = false;
      const double I_winvh = guarded(f_winvh, x, &div);
      const double I_w1kinvh = guarded(f_w1kinvh, x, &div);
      const double I_w1k = guarded(f_w1k, x, &div);
      if (div) {
        if (!hfr_ratio.skipped) skip(hfr_ratio, "w^(1-k) integrals diverge");
        if (!hfr_vs_plain.skipped) skip(hfr_vs_plain, "w^(1-k) integrals diverge");
      } else {
        if (!hfr_ratio.skipped) {
          hfr_ratio.record(I_winvh / I_w1kinvh, I_w / I_w1k, x);
        }
        if (!hfr_vs_plain.skipped) {
          bool hdiv = false;
          const double I_invh = guarded(f_invh, x, &hdiv);
          if (hdiv) {
            skip(hfr_vs_plain, "plain harmonic mean diverges");
          } else {
            hfr_vs_plain.record(I_w / I_w1kinvh, x / I_invh, x);
          }
        }
      }
    }
    if (!afr_vs_plain.skipped) {
      afr_vs_plain.record(I_wk1h / I_w, cum([hm](double u) { return hm.hazard(u); }, x) / x, x);
    }
    if (!gfr_vs_plain.skipped) {
      const double I_lnh = cum(f_lnh, x);
      gfr_vs_plain.record(std::exp(I_wln_wkh / I_w), std::exp(I_lnh / x), x);
    }
  }
  for (auto& r : reports) r.finalize();
  return reports;
}

namespace {

Monotone afr_direction(const WeightedModel& m, double lo, double hi,
                       const EvalOptions& opts) {
  return scan_monotonicity(
             [&m, &opts](double x) { return wafr(m, x, opts).value; }, lo, hi, 96)
      .label;
}

}  // namespace

BoundReport star_shaped_check(const WeightedModel& m,
                              std::span<const double> alphas,
                              std::span<const double> x_grid,
                              const EvalOptions& opts) {
  BoundReport report;
  report.id = "weighted-star-shaped-survival";
  if (alphas.empty() || x_grid.empty()) {
    throw ValidationError("star_shaped_check: empty inputs");
  }
  const double lo = std::max(1e-3 * x_grid.front(), 1e-6);
  const double hi = x_grid.back();
  const Monotone dir = afr_direction(m, std::max(lo, x_grid.front() * 0.05), hi, opts);
  if (dir != Monotone::increasing && dir != Monotone::decreasing &&
      dir != Monotone::constant) {
    report.skipped = true;
    report.reason = "weighted AFR not monotone on the interval; unclassified";
    report.finalize();
    return report;
  }
  report.expected = dir == Monotone::increasing
                        ? Relation::geq
                        : (dir == Monotone::decreasing ? Relation::leq
                                                       : Relation::equal);

  for (double x : x_grid) {
    const double fw_x = m.weighted_survival(x, opts);
    const double W_x = m.cumulative_weight(x, opts);
    for (double alpha : alphas) {
      if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("star_shaped_check: alpha must be in [0,1]");
      }
      const double ax = alpha * x;
      const double lhs = m.weighted_survival(ax, opts);
      const double ratio = alpha == 0.0 ? 0.0 : m.cumulative_weight(ax, opts) / W_x;
      const double rhs = std::pow(fw_x, ratio);
      report.record(lhs, rhs, x);
    }
  }

  // Equivalent condition: survival^(1/W) = exp(-A^w) must run against the
  // weighted AFR's direction.
  const MonotoneVerdict edge = scan_monotonicity(
      [&m, &opts](double x) { return std::exp(-wafr(m, x, opts).value); },
      std::max(lo, x_grid.front() * 0.05), hi, 96);
  const bool edge_ok =
      dir == Monotone::constant
          ? edge.label == Monotone::constant
          : direction_like(edge.label, dir == Monotone::increasing
                                           ? Monotone::decreasing
                                           : Monotone::increasing);
  report.finalize();
  if (!edge_ok) {
    report.passed = false;
    report.reason = std::string("survival^(1/W) verdict ") +
                    to_string(edge.label) + " inconsistent with AFR " +
                    to_string(dir);
  }
  return report;
}

BoundReport gfr_star_shaped_check(const WeightedModel& m,
                                  std::span<const double> alphas,
                                  std::span<const double> x_grid,
                                  const EvalOptions& opts) {
  BoundReport report;
  report.id = "weighted-star-shaped-log-hazard";
  if (alphas.empty() || x_grid.empty()) {
    throw ValidationError("gfr_star_shaped_check: empty inputs");
  }
  const double hi = x_grid.back();
  const Monotone dir =
      scan_monotonicity([&m, &opts](double x) { return wgfr(m, x, opts).value; },
                        std::max(x_grid.front() * 0.05, 1e-6), hi, 96)
          .label;
  if (dir != Monotone::increasing && dir != Monotone::decreasing &&
      dir != Monotone::constant) {
    report.skipped = true;
    report.reason = "weighted GFR not monotone on the interval; unclassified";
    report.finalize();
    return report;
  }
  report.expected = dir == Monotone::increasing
                        ? Relation::leq
                        : (dir == Monotone::decreasing ? Relation::geq
                                                       : Relation::equal);

  const HazardModel hm = m.hazard_model();
  const WeightFunction w = m.weight();
  const std::function<double(double)> L = [hm, w](double u) {
    const double wu = w(u);
    return wu == 0.0 ? 0.0 : wu * std::log(hm.hazard(u));
  };
  for (double x : x_grid) {
    const double L_x = integrate(L, 0.0, x, opts.quad).value;
    const double W_x = m.cumulative_weight(x, opts);
    for (double alpha : alphas) {
      if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("gfr_star_shaped_check: alpha must be in [0,1]");
      }
      const double ax = alpha * x;
      const double ratio = alpha == 0.0 ? 0.0 : m.cumulative_weight(ax, opts) / W_x;
      if (!(ratio >= -1e-12 && ratio <= 1.0 + 1e-12)) {
        report.passed = false;
        report.reason = "weight ratio W(alpha x)/W(x) escaped [0,1]";
      }
      const double lhs = ax == 0.0 ? 0.0 : integrate(L, 0.0, ax, opts.quad).value;
      report.record(lhs, ratio * L_x, x);
    }
  }
  const bool ratio_failed = !report.reason.empty();
  report.finalize();
  if (ratio_failed) report.passed = false;
  return report;
}

}  // namespace wfr
