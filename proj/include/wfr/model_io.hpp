#ifndef WFR_MODEL_IO_HPP
#define WFR_MODEL_IO_HPP

#include <json.hpp>

#include "wfr/aging.hpp"
#include "wfr/models.hpp"
#include "wfr/systems.hpp"
#include "wfr/weighted_means.hpp"

namespace wfr {

using json = nlohmann::json;

/// Hazard spec: {"family": "...", <params>...}; marshall_olkin nests its
/// base spec under "base".
HazardModel parse_hazard(const json& j);
json hazard_to_json(const HazardModel& m);

/// Weight spec: {"family": "...", <params>...}; defaults to constant when
/// the document has no "weight" object.
WeightFunction parse_weight(const json& j);
json weight_to_json(const WeightFunction& w);

/// Model document: {"hazard": {...}, "weight": {...}}.
WeightedModel parse_weighted_model(const json& j);
json weighted_model_to_json(const WeightedModel& m);

/// Mixture document: {"mixture": {"components": [...], "proportions": [...]}}.
MixtureSpec parse_mixture(const json& j);

json verdict_to_json(const MonotoneVerdict& v);
json aging_report_to_json(const AgingReport& r);
json bound_report_to_json(const BoundReport& r);
json validity_report_to_json(const ValidityReport& r);
json witness_to_json(const NonclosureWitness& w);

}  // namespace wfr

#endif  // WFR_MODEL_IO_HPP
