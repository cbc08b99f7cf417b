#include "wfr/model_io.hpp"

#include <string>
#include <vector>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

double need_number(const json& j, const std::string& field,
                   const std::string& context) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw ValidationError(context + ": missing numeric field \"" + field + "\"");
  }
  return j[field].get<double>();
}

std::string need_string(const json& j, const std::string& field,
                        const std::string& context) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw ValidationError(context + ": missing string field \"" + field + "\"");
  }
  return j[field].get<std::string>();
}

}  // namespace

HazardModel parse_hazard(const json& j) {
  const std::string family = need_string(j, "family", "hazard");
  if (family == "exponential") {
    return HazardModel::exponential(need_number(j, "lambda", "hazard"));
  }
  if (family == "weibull") {
    return HazardModel::weibull(need_number(j, "alpha", "hazard"),
                                need_number(j, "beta", "hazard"));
  }
  if (family == "additive_weibull") {
    return HazardModel::additive_weibull(
        need_number(j, "alpha", "hazard"), need_number(j, "theta", "hazard"),
        need_number(j, "beta", "hazard"), need_number(j, "gamma", "hazard"));
  }
  if (family == "kies") {
    return HazardModel::kies(need_number(j, "a", "hazard"),
                             need_number(j, "b", "hazard"),
                             need_number(j, "lambda", "hazard"),
                             need_number(j, "beta", "hazard"));
  }
  if (family == "pareto_one") {
    return HazardModel::pareto_one(need_number(j, "alpha", "hazard"));
  }
  if (family == "marshall_olkin") {
    if (!j.contains("base")) {
      throw ValidationError("hazard: marshall_olkin requires a \"base\" spec");
    }
    return HazardModel::marshall_olkin(parse_hazard(j["base"]),
                                       need_number(j, "alpha", "hazard"));
  }
  throw ValidationError("hazard: unknown family \"" + family + "\"");
}

json hazard_to_json(const HazardModel& m) {
  json j;
  switch (m.family()) {
    case HazardFamily::exponential: j["family"] = "exponential"; break;
    case HazardFamily::weibull: j["family"] = "weibull"; break;
    case HazardFamily::additive_weibull: j["family"] = "additive_weibull"; break;
    case HazardFamily::kies: j["family"] = "kies"; break;
    case HazardFamily::pareto_one: j["family"] = "pareto_one"; break;
    case HazardFamily::marshall_olkin: j["family"] = "marshall_olkin"; break;
    case HazardFamily::custom: j["family"] = "custom"; break;
  }
  j["label"] = m.label();
  for (const auto& [key, value] : m.params()) j[key] = value;
  if (m.base() != nullptr) j["base"] = hazard_to_json(*m.base());
  return j;
}

WeightFunction parse_weight(const json& j) {
  const std::string family = need_string(j, "family", "weight");
  if (family == "constant") return WeightFunction::constant();
  if (family == "power") return WeightFunction::power(need_number(j, "c", "weight"));
  if (family == "exponential") {
    return WeightFunction::exponential(need_number(j, "n", "weight"));
  }
  if (family == "one_minus_exponential") {
    return WeightFunction::one_minus_exponential(need_number(j, "n", "weight"));
  }
  if (family == "marshall_olkin_tilt") {
    if (!j.contains("base")) {
      throw ValidationError("weight: marshall_olkin_tilt requires a \"base\" spec");
    }
    return WeightFunction::marshall_olkin_tilt(parse_hazard(j["base"]),
                                               need_number(j, "alpha", "weight"));
  }
  if (family == "kies_ratio") {
    return WeightFunction::kies_ratio(need_number(j, "a", "weight"),
                                      need_number(j, "b", "weight"));
  }
  if (family == "tabulated") {
    if (!j.contains("grid") || !j.contains("values")) {
      throw ValidationError("weight: tabulated requires \"grid\" and \"values\"");
    }
    return WeightFunction::tabulated(j["grid"].get<std::vector<double>>(),
                                     j["values"].get<std::vector<double>>());
  }
  throw ValidationError("weight: unknown family \"" + family + "\"");
}

json weight_to_json(const WeightFunction& w) {
  json j;
  switch (w.family()) {
    case WeightFamily::constant: j["family"] = "constant"; break;
    case WeightFamily::power: j["family"] = "power"; break;
    case WeightFamily::exponential: j["family"] = "exponential"; break;
    case WeightFamily::one_minus_exponential:
      j["family"] = "one_minus_exponential";
      break;
    case WeightFamily::marshall_olkin_tilt:
      j["family"] = "marshall_olkin_tilt";
      break;
    case WeightFamily::kies_ratio: j["family"] = "kies_ratio"; break;
    case WeightFamily::tabulated: j["family"] = "tabulated"; break;
    case WeightFamily::custom: j["family"] = "custom"; break;
  }
  j["label"] = w.label();
  for (const auto& [key, value] : w.params()) j[key] = value;
  if (w.base() != nullptr) j["base"] = hazard_to_json(*w.base());
  return j;
}

WeightedModel parse_weighted_model(const json& j) {
  if (!j.contains("hazard")) {
    throw ValidationError("model document: missing \"hazard\" object");
  }
  HazardModel hazard = parse_hazard(j["hazard"]);
  WeightFunction weight =
      j.contains("weight") ? parse_weight(j["weight"]) : WeightFunction::constant();
  return WeightedModel(std::move(hazard), std::move(weight));
}

json weighted_model_to_json(const WeightedModel& m) {
  json j;
  j["hazard"] = hazard_to_json(m.hazard_model());
  j["weight"] = weight_to_json(m.weight());
  return j;
}

MixtureSpec parse_mixture(const json& j) {
  if (!j.contains("mixture")) {
    throw ValidationError("system document: missing \"mixture\" object");
  }
  const json& mix = j["mixture"];
  if (!mix.contains("components") || !mix["components"].is_array()) {
    throw ValidationError("mixture: missing \"components\" array");
  }
  if (!mix.contains("proportions") || !mix["proportions"].is_array()) {
    throw ValidationError("mixture: missing \"proportions\" array");
  }
  std::vector<HazardModel> components;
  for (const json& c : mix["components"]) components.push_back(parse_hazard(c));
  return make_mixture(std::move(components),
                      mix["proportions"].get<std::vector<double>>());
}

json verdict_to_json(const MonotoneVerdict& v) {
  json j;
  j["label"] = to_string(v.label);
  j["change_points"] = v.change_points;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json aging_report_to_json(const AgingReport& r) {
  json j;
  std::vector<std::string> labels;
  for (AgingClass c : r.labels) labels.emplace_back(to_string(c));
  j["labels"] = labels;
  j["verdicts"] = {{"hazard", verdict_to_json(r.hazard)},
                   {"weighted_hazard", verdict_to_json(r.weighted_hazard)},
                   {"afr", verdict_to_json(r.afr)},
                   {"gfr", verdict_to_json(r.gfr)},
                   {"hfr", verdict_to_json(r.hfr)},
                   {"afr_of_weighted", verdict_to_json(r.afr_of_weighted)}};
  j["scan_interval"] = {r.lo, r.hi};
  j["grid_size"] = r.grid_size;
  j["gfr_excluded"] = r.gfr_excluded;
  j["hfr_excluded"] = r.hfr_excluded;
  j["transmission_consistent"] = r.transmission_consistent;
  j["notes"] = r.notes;
  return j;
}

json bound_report_to_json(const BoundReport& r) {
  json j;
  j["id"] = r.id;
  j["expected"] = to_string(r.expected);
  j["max_violation"] = r.max_violation;
  j["scale"] = r.scale;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.skipped) j["worst_x"] = r.worst_x;
  return j;
}

json validity_report_to_json(const ValidityReport& r) {
  json j;
  j["nonnegative"] = r.nonnegative;
  j["finite_cumulative"] = r.finite_cumulative;
  j["tail_growth"] =
      r.likely_divergent_tail ? "likely-divergent" : "likely-convergent";
  j["defective"] = r.defective();
  j["propagation_checkable"] = r.propagation_checkable;
  j["tail_values"] = r.tail_values;
  j["notes"] = r.notes;
  return j;
}

json witness_to_json(const NonclosureWitness& w) {
  json j;
  j["found"] = w.found;
  j["combinations_tried"] = w.combinations_tried;
  j["scan_interval"] = {w.t_lo, w.t_hi};
  j["grid_size"] = w.scan_grid;
  if (!w.found) return j;
  j["parameters"] = {{"alpha", w.alpha}, {"beta", w.beta}, {"a", w.a},
                     {"b", w.b},         {"n", w.n}};
  j["component1"] = aging_report_to_json(w.component1);
  j["component2"] = aging_report_to_json(w.component2);
  j["system_afr"] = verdict_to_json(w.system_afr);
  j["system_afr_refined"] = verdict_to_json(w.system_afr_refined);
  return j;
}

}  // namespace wfr
