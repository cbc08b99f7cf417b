// Command-line front end: evaluate weighted failure-rate measures on grids,
// classify aging behavior, run verification suites, search the series-system
// non-closure witness, and emit CSV/JSON for plotting.
//
// Exit codes: 0 all requested checks pass; 2 parse/validation failure
// (machine-readable JSON on stderr); 3 numerical accuracy failure or an
// exhausted witness search (partial results flagged).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfr/aging.hpp"
#include "wfr/characterization.hpp"
#include "wfr/errors.hpp"
#include "wfr/model_io.hpp"
#include "wfr/quantile.hpp"
#include "wfr/systems.hpp"
#include "wfr/weighted_means.hpp"

namespace {

using wfr::json;

struct GridSpec {
  double start = 0.1;
  double stop = 5.0;
  int count = 50;
  std::vector<double> explicit_points;

  std::vector<double> points() const {
    if (!explicit_points.empty()) return explicit_points;
    return wfr::make_grid(start, stop, count);
  }
};

GridSpec parse_grid(const std::string& text) {
  GridSpec spec;
  if (text.empty()) return spec;
  if (text.find(':') != std::string::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
      throw wfr::ValidationError("grid: expected start:stop:count");
    }
    spec.start = std::stod(text.substr(0, first));
    spec.stop = std::stod(text.substr(first + 1, second - first - 1));
    spec.count = std::stoi(text.substr(second + 1));
    if (spec.count < 2 || !(spec.start < spec.stop)) {
      throw wfr::ValidationError("grid: need start < stop and count >= 2");
    }
    return spec;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    spec.explicit_points.push_back(std::stod(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (spec.explicit_points.empty()) {
    throw wfr::ValidationError("grid: no points parsed");
  }
  spec.start = spec.explicit_points.front();
  spec.stop = spec.explicit_points.back();
  spec.count = static_cast<int>(spec.explicit_points.size());
  return spec;
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

std::string csv_cell(const wfr::MeanValue& v) {
  return v.divergent ? "div" : fmt9(v.value);
}

json json_cell(const wfr::MeanValue& v) {
  if (v.divergent) return json{{"divergent", true}};
  return json(v.value);
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wfr::ValidationError("cannot open model file: " + path);
  return json::parse(in);
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw wfr::ValidationError("cannot open output file: " + out_path);
  out << payload;
}

struct CommonOptions {
  std::string model_path;
  std::string grid_text;
  std::string out_path;
  std::string format = "json";
  double theta = 0.0;
  unsigned long long seed = 0;
  double tol_quad = 0.0;
  double tol_check = 0.0;

  wfr::EvalOptions eval_options() const {
    wfr::EvalOptions opts;
    if (tol_quad > 0.0) {
      opts.quad.rel_tol = tol_quad;
      opts.quad.abs_tol = tol_quad / 100.0;
    }
    return opts;
  }
  double check_threshold(double fallback) const {
    return tol_check > 0.0 ? tol_check : fallback;
  }
  json config_echo(const char* command) const {
    json j;
    j["command"] = command;
    j["grid"] = grid_text.empty() ? "default" : grid_text;
    j["format"] = format;
    j["seed"] = seed;
    j["tol_quad"] = tol_quad;
    j["tol_check"] = tol_check;
    return j;
  }
};

void add_common(CLI::App* cmd, CommonOptions* opts, bool needs_model = true) {
  auto* model = cmd->add_option("--model", opts->model_path,
                                "path to the model JSON document");
  if (needs_model) model->required();
  cmd->add_option("--grid", opts->grid_text,
                  "evaluation grid, start:stop:count or x1,x2,...");
  cmd->add_option("--out", opts->out_path, "output path (default stdout)");
  cmd->add_option("--format", opts->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--theta", opts->theta, "proportional-hazards factor");
  cmd->add_option("--seed", opts->seed, "seed for sampled batteries");
  cmd->add_option("--tol-quad", opts->tol_quad, "quadrature relative tolerance");
  cmd->add_option("--tol-check", opts->tol_check, "check threshold override");
}

// ---------------------------------------------------------------------------

int run_eval(const CommonOptions& cli) {
  const json doc = load_document(cli.model_path);
  const wfr::WeightedModel model = wfr::parse_weighted_model(doc);
  const wfr::EvalOptions opts = cli.eval_options();
  const GridSpec grid = parse_grid(cli.grid_text);
  const std::vector<double> xs = grid.points();

  bool accuracy_trouble = false;
  std::vector<wfr::MeanTriple> triples;
  try {
    triples = wfr::mean_triple_grid(model, xs, opts);
  } catch (const wfr::AccuracyError&) {
    accuracy_trouble = true;
    for (double x : xs) {
      wfr::MeanTriple t;
      t.x = x;
      try {
        t = wfr::mean_triple(model, x, opts);
      } catch (const wfr::AccuracyError&) {
      }
      triples.push_back(t);
    }
  }

  const wfr::ValidityReport validity =
      wfr::check_validity_postulates(model, xs.back(), opts);

  if (cli.format == "csv") {
    std::string csv = "x,hazard,weighted_hazard,weighted_survival,afr,gfr,hfr\n";
    for (const auto& t : triples) {
      csv += fmt9(t.x) + ',' + fmt9(model.hazard_model().hazard(t.x)) + ',' +
             fmt9(model.weighted_hazard(t.x)) + ',' +
             fmt9(model.weighted_survival(t.x, opts)) + ',' + csv_cell(t.afr) +
             ',' + csv_cell(t.gfr) + ',' + csv_cell(t.hfr) + '\n';
    }
    emit(cli.out_path, csv);
  } else {
    json out = cli.config_echo("eval");
    out["model"] = wfr::weighted_model_to_json(model);
    json rows = json::array();
    for (const auto& t : triples) {
      rows.push_back(json{{"x", t.x},
                          {"hazard", model.hazard_model().hazard(t.x)},
                          {"weighted_hazard", model.weighted_hazard(t.x)},
                          {"weighted_survival", model.weighted_survival(t.x, opts)},
                          {"afr", json_cell(t.afr)},
                          {"gfr", json_cell(t.gfr)},
                          {"hfr", json_cell(t.hfr)}});
    }
    out["rows"] = rows;
    out["validity"] = wfr::validity_report_to_json(validity);
    out["defective"] = validity.defective();
    out["accuracy_failures"] = accuracy_trouble;
    emit(cli.out_path, out.dump(2) + "\n");
  }
  return accuracy_trouble ? 3 : 0;
}

int run_classify(const CommonOptions& cli) {
  const json doc = load_document(cli.model_path);
  const wfr::WeightedModel model = wfr::parse_weighted_model(doc);
  const wfr::EvalOptions opts = cli.eval_options();

  wfr::AgingReport report;
  if (cli.grid_text.empty()) {
    report = wfr::classify(model, 128, opts);
  } else {
    const GridSpec grid = parse_grid(cli.grid_text);
    report = wfr::classify(model, grid.start, grid.stop, grid.count, opts);
  }
  const wfr::ValidityReport validity =
      wfr::check_validity_postulates(model, report.hi, opts);

  json out = cli.config_echo("classify");
  out["model"] = wfr::weighted_model_to_json(model);
  out["report"] = wfr::aging_report_to_json(report);
  out["defective"] = validity.defective();
  const auto violations = wfr::inclusion_chain_violations(report);
  out["chain_violations"] = violations;
  emit(cli.out_path, out.dump(2) + "\n");
  return (report.transmission_consistent && violations.empty()) ? 0 : 3;
}

int run_verify(const CommonOptions& cli, const std::string& suite) {
  const json doc = load_document(cli.model_path);
  const wfr::WeightedModel model = wfr::parse_weighted_model(doc);
  const wfr::EvalOptions opts = cli.eval_options();
  const GridSpec grid = parse_grid(cli.grid_text);
  std::vector<double> xs = grid.points();

  json out = cli.config_echo("verify");
  out["model"] = wfr::weighted_model_to_json(model);
  out["suite"] = suite;
  bool passed = true;
  json checks = json::array();

  if (suite == "chain") {
    std::mt19937_64 rng(cli.seed);
    std::uniform_real_distribution<double> extra(grid.start, grid.stop);
    for (int i = 0; i < 16; ++i) xs.push_back(extra(rng));
    std::sort(xs.begin(), xs.end());
    const double threshold = cli.check_threshold(1e-9);
    double worst = 0.0;
    for (double x : xs) {
      const wfr::MeanTriple t = wfr::mean_triple(model, x, opts);
      if (t.afr.finite_positive() && t.gfr.finite_positive() &&
          t.hfr.finite_positive()) {
        const double scale = t.afr.value;
        worst = std::max(worst, (t.gfr.value - t.afr.value) / scale);
        worst = std::max(worst, (t.hfr.value - t.gfr.value) / scale);
      }
    }
    passed = worst <= threshold;
    checks.push_back(json{{"id", "afr>=gfr>=hfr"},
                          {"max_violation", worst},
                          {"threshold", threshold},
                          {"passed", passed}});
  } else if (suite == "postulates") {
    const auto validity = wfr::check_validity_postulates(model, grid.stop, opts);
    passed = validity.nonnegative && validity.finite_cumulative;
    checks.push_back(wfr::validity_report_to_json(validity));
  } else if (suite == "bounds") {
    for (const auto& report : wfr::bound_check_means(model, xs, opts)) {
      checks.push_back(wfr::bound_report_to_json(report));
      passed = passed && report.passed;
    }
  } else if (suite == "closed-form") {
    const bool applicable =
        model.hazard_model().family() == wfr::HazardFamily::weibull &&
        model.weight().family() == wfr::WeightFamily::exponential &&
        model.weight().param("n") < 0.0;
    if (!applicable) {
      checks.push_back(json{{"id", "closed-form-vs-quadrature"},
                            {"skipped", true},
                            {"reason", "needs a weibull hazard with a negative "
                                       "exponential weight"}});
    } else {
      wfr::EvalOptions quad_route = opts;
      quad_route.use_closed_forms = false;
      const double threshold = cli.check_threshold(1e-6);
      double worst = 0.0;
      for (double x : xs) {
        const double s1 = model.weighted_survival(x, opts);
        const double s2 = model.weighted_survival(x, quad_route);
        worst = std::max(worst, std::abs(s1 - s2) / std::max(1e-300, std::abs(s2)));
        const auto g1 = wfr::wgfr(model, x, opts);
        const auto g2 = wfr::wgfr(model, x, quad_route);
        if (!g1.divergent && !g2.divergent) {
          worst = std::max(worst, std::abs(g1.value - g2.value) / g2.value);
        }
        const auto h1 = wfr::whfr(model, x, opts);
        const auto h2 = wfr::whfr(model, x, quad_route);
        if (!h1.divergent && !h2.divergent) {
          worst = std::max(worst, std::abs(h1.value - h2.value) / h2.value);
        }
      }
      passed = worst <= threshold;
      checks.push_back(json{{"id", "closed-form-vs-quadrature"},
                            {"max_violation", worst},
                            {"threshold", threshold},
                            {"passed", passed}});
    }
  } else if (suite == "exponentiality") {
    const double threshold = cli.check_threshold(1e-6);
    const wfr::HazardModel hm = model.hazard_model();
    const bool constant_hazard =
        wfr::scan_monotonicity([hm](double x) { return hm.hazard(x); },
                               grid.start, grid.stop, 128)
            .label == wfr::Monotone::constant;
    for (wfr::MeanPair pair :
         {wfr::MeanPair::AG, wfr::MeanPair::GH, wfr::MeanPair::AH}) {
      const auto verdict =
          wfr::test_exponentiality_via_mean_equality(model, pair, xs, threshold, opts);
      const bool agrees =
          verdict.inconclusive || (verdict.consistent == constant_hazard);
      passed = passed && agrees;
      checks.push_back(json{{"id", verdict.test_id},
                            {"statistic", verdict.statistic},
                            {"threshold", verdict.threshold},
                            {"consistent", verdict.consistent},
                            {"inconclusive", verdict.inconclusive},
                            {"agrees_with_hazard_scan", agrees}});
    }
  } else {
    throw wfr::ValidationError(
        "unknown suite \"" + suite +
        "\" (expected chain, postulates, bounds, closed-form, exponentiality)");
  }

  out["checks"] = checks;
  out["passed"] = passed;
  emit(cli.out_path, out.dump(2) + "\n");
  return passed ? 0 : 3;
}

int run_quantile(const CommonOptions& cli) {
  const json doc = load_document(cli.model_path);
  const wfr::HazardModel hazard = wfr::parse_hazard(doc.at("hazard"));
  const wfr::EvalOptions opts = cli.eval_options();

  wfr::QuantileModel qm = [&hazard]() {
    switch (hazard.family()) {
      case wfr::HazardFamily::exponential:
        return wfr::QuantileModel::exponential(hazard.param("lambda"));
      case wfr::HazardFamily::pareto_one:
        return wfr::QuantileModel::pareto_one(hazard.param("alpha"));
      case wfr::HazardFamily::weibull:
        if (hazard.param("alpha") == 1.0) {
          return wfr::QuantileModel::weibull(hazard.param("beta"));
        }
        return wfr::QuantileModel::from_hazard(hazard);
      default:
        return wfr::QuantileModel::from_hazard(hazard);
    }
  }();

  std::vector<double> us;
  if (cli.grid_text.empty()) {
    for (int i = 1; i <= 99; ++i) us.push_back(i / 100.0);
  } else {
    us = parse_grid(cli.grid_text).points();
  }
  for (double u : us) {
    if (!(u > 0.0 && u < 1.0)) {
      throw wfr::ValidationError("quantile: u grid must lie inside (0,1)");
    }
  }

  struct Row {
    double u, Q, q, hq;
    double qa;
    wfr::MeanValue qg, qh;
  };
  std::vector<Row> rows;
  for (double u : us) {
    Row r;
    r.u = u;
    r.Q = qm.quantile(u);
    r.q = qm.quantile_density(u);
    r.hq = qm.hazard_quantile(u);
    r.qa = wfr::qa(qm, u);
    r.qg = wfr::qg(qm, u, wfr::QuantileConvention::paper, opts.quad);
    r.qh = wfr::qh(qm, u, wfr::QuantileConvention::paper, opts.quad);
    rows.push_back(r);
  }

  json phm;
  if (cli.theta > 0.0) {
    const auto result = wfr::phm_quantile(qm, cli.theta);
    phm = json{{"theta", result.comparison.theta},
               {"max_distribution_gap", result.comparison.max_distribution_gap},
               {"max_identity_gap", result.comparison.max_identity_gap},
               {"max_quantile_gap", result.comparison.max_quantile_gap}};
  }

  if (cli.format == "csv") {
    std::string csv = "u,Q,q,hq,qa,qg,qh\n";
    for (const auto& r : rows) {
      csv += fmt9(r.u) + ',' + fmt9(r.Q) + ',' + fmt9(r.q) + ',' + fmt9(r.hq) +
             ',' + fmt9(r.qa) + ',' + csv_cell(r.qg) + ',' + csv_cell(r.qh) + '\n';
    }
    if (!phm.is_null()) {
      csv += "\nmetric,value\n";
      csv += "phm_theta," + fmt9(phm["theta"].get<double>()) + '\n';
      csv += "phm_max_distribution_gap," +
             fmt9(phm["max_distribution_gap"].get<double>()) + '\n';
      csv += "phm_max_identity_gap," + fmt9(phm["max_identity_gap"].get<double>()) +
             '\n';
      csv += "phm_max_quantile_gap," + fmt9(phm["max_quantile_gap"].get<double>()) +
             '\n';
    }
    emit(cli.out_path, csv);
  } else {
    json out = cli.config_echo("quantile");
    out["model"] = wfr::hazard_to_json(hazard);
    out["quantile_model"] = qm.label();
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back(json{{"u", r.u},
                           {"Q", r.Q},
                           {"q", r.q},
                           {"hq", r.hq},
                           {"qa", r.qa},
                           {"qg", json_cell(r.qg)},
                           {"qh", json_cell(r.qh)}});
    }
    out["rows"] = jrows;
    if (!phm.is_null()) out["phm"] = phm;
    emit(cli.out_path, out.dump(2) + "\n");
  }
  return 0;
}

int run_system(const CommonOptions& cli) {
  const json doc = load_document(cli.model_path);
  const wfr::MixtureSpec mixture = wfr::parse_mixture(doc);
  const auto series = wfr::mixture_as_series(mixture);
  const GridSpec grid = parse_grid(cli.grid_text);
  const std::vector<double> xs = grid.points();

  double max_gap = 0.0;
  double max_weight_gap = 0.0;
  json rows = json::array();
  for (double x : xs) {
    const auto eval = wfr::mixture_hazard(mixture, x);
    const double series_h = wfr::series_hazard(series, x);
    const double gap = std::abs(series_h - eval.hazard);
    max_gap = std::max(max_gap, gap);
    double sum = 0.0;
    for (double p : eval.effective_weights) sum += p;
    max_weight_gap = std::max(max_weight_gap, std::abs(sum - 1.0));
    rows.push_back(json{{"x", x},
                        {"mixture_hazard", eval.hazard},
                        {"series_hazard", series_h},
                        {"effective_weights", eval.effective_weights}});
  }
  const bool passed = max_gap <= 1e-12 && max_weight_gap == 0.0;

  json out = cli.config_echo("system");
  out["rows"] = rows;
  out["max_hazard_gap"] = max_gap;
  out["max_weight_sum_gap"] = max_weight_gap;
  out["passed"] = passed;
  emit(cli.out_path, out.dump(2) + "\n");
  return passed ? 0 : 3;
}

int run_counterexample(const CommonOptions& cli) {
  wfr::NonclosureSearchBox box;
  if (!cli.grid_text.empty()) {
    const GridSpec grid = parse_grid(cli.grid_text);
    box.t_lo = grid.start;
    box.t_hi = grid.stop;
    box.scan_grid = std::max(grid.count, 32);
  }
  const auto witness = wfr::find_afr_nonclosure_witness(box, cli.eval_options());
  json out = cli.config_echo("counterexample");
  out["witness"] = wfr::witness_to_json(witness);
  emit(cli.out_path, out.dump(2) + "\n");
  return witness.found ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted failure-rate means toolkit"};
  app.require_subcommand(1);

  CommonOptions eval_opts, classify_opts, verify_opts, quantile_opts, system_opts,
      counter_opts;
  std::string suite = "chain";

  auto* eval_cmd = app.add_subcommand(
      "eval", "tabulate h, h^w, weighted survival and the three means");
  add_common(eval_cmd, &eval_opts);

  auto* classify_cmd =
      app.add_subcommand("classify", "aging-class report for a model");
  add_common(classify_cmd, &classify_opts);

  auto* verify_cmd =
      app.add_subcommand("verify", "run a named property suite on a model");
  add_common(verify_cmd, &verify_opts);
  verify_cmd->add_option("--suite", suite,
                         "chain | postulates | bounds | closed-form | "
                         "exponentiality");

  auto* quantile_cmd = app.add_subcommand(
      "quantile", "tabulate Q, q, h_q and the quantile means");
  add_common(quantile_cmd, &quantile_opts);

  auto* system_cmd = app.add_subcommand(
      "system", "mixture vs weighted-series equivalence report");
  add_common(system_cmd, &system_opts);

  auto* counter_cmd = app.add_subcommand(
      "counterexample", "search for the series-system non-closure witness");
  add_common(counter_cmd, &counter_opts, /*needs_model=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err{{"error", {{"type", "cli"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_opts);
    if (classify_cmd->parsed()) return run_classify(classify_opts);
    if (verify_cmd->parsed()) return run_verify(verify_opts, suite);
    if (quantile_cmd->parsed()) return run_quantile(quantile_opts);
    if (system_cmd->parsed()) return run_system(system_opts);
    if (counter_cmd->parsed()) return run_counterexample(counter_opts);
  } catch (const wfr::AccuracyError& e) {
    json err{{"error", {{"type", "accuracy"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const wfr::Error& e) {
    json err{{"error", {{"type", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const json::exception& e) {
    json err{{"error", {{"type", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
