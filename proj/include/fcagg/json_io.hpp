#pragma once

#include <json.hpp>

#include "fcagg/aggregator.hpp"
#include "fcagg/axioms.hpp"
#include "fcagg/classification.hpp"
#include "fcagg/harness.hpp"
#include "fcagg/measure.hpp"
#include "fcagg/piecewise.hpp"

namespace fcagg {

// ordered_json keeps insertion order, so serialized reports are
// byte-identical across runs with the same inputs
using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const ordered_json& j);

ordered_json to_json(const Measure& mu);
Measure measure_from_json(const ordered_json& j);

ordered_json to_json(const ClassPoint& c);
ordered_json to_json(const Profile& c);
Profile profile_from_json(const ordered_json& j);

// witness profiles are embedded inline so a FAIL report is self-contained
ordered_json to_json(const AxiomReport& r);
ordered_json to_json(const ImplicationReport& r);
ordered_json to_json(const ExtractionResult& r);
ordered_json to_json(const AdditivityReport& r);
ordered_json to_json(const HTable& t);
ordered_json to_json(const Example1Report& r);

// {"kind": "weighted_mean", "measure": {...}} | {"kind": "dictator", "i": x}
// | {"kind": "prop2_nonoptimal" | "prop2_nonindependent"
//    | "prop2_nonzerounanimous" | "prop2_dictator"}
// | {"kind": "odd_h_mean", "variant": "linear" | "cube", "measure"?: {...}}
// | {"kind": "per_type_mean", "measures": [{...}, ...]}
// Unknown fields are rejected.
Fcaf aggregator_from_json(const ordered_json& j);

}  // namespace fcagg
