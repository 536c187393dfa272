#include "fcagg/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcagg {

namespace {

void ensure_keys(const ordered_json& j, const std::vector<std::string>& allowed,
                 const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const std::string& key : allowed) ok = ok || item.key() == key;
    if (!ok) throw std::invalid_argument(what + ": unknown field '" + item.key() + "'");
  }
}

}  // namespace

ordered_json to_json(const PiecewiseFn& f) {
  ordered_json j;
  j["breakpoints"] = f.breakpoints();
  j["pieces"] = ordered_json::array();
  for (const Polynomial& p : f.pieces()) j["pieces"].push_back({{"coeffs", p.coeffs()}});
  j["atoms"] = ordered_json::array();
  for (const Atom& a : f.atoms()) j["atoms"].push_back({{"point", a.point}, {"value", a.value}});
  return j;
}

PiecewiseFn piecewise_from_json(const ordered_json& j) {
  ensure_keys(j, {"breakpoints", "pieces", "atoms"}, "PiecewiseFn");
  std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
  std::vector<Polynomial> pieces;
  for (const auto& pj : j.at("pieces")) {
    ensure_keys(pj, {"coeffs"}, "PiecewiseFn piece");
    pieces.emplace_back(pj.at("coeffs").get<std::vector<double>>());
  }
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& aj : j.at("atoms")) {
      ensure_keys(aj, {"point", "value"}, "PiecewiseFn atom");
      atoms.push_back({aj.at("point").get<double>(), aj.at("value").get<double>()});
    }
  return PiecewiseFn(std::move(bps), std::move(pieces), std::move(atoms));
}

ordered_json to_json(const Measure& mu) {
  ordered_json j;
  j["density"] = to_json(mu.density());
  j["masses"] = ordered_json::array();
  for (const PointMass& pm : mu.masses())
    j["masses"].push_back({{"point", pm.point}, {"mass", pm.mass}});
  return j;
}

Measure measure_from_json(const ordered_json& j) {
  ensure_keys(j, {"density", "masses"}, "Measure");
  PiecewiseFn density = piecewise_from_json(j.at("density"));
  std::vector<PointMass> masses;
  if (j.contains("masses"))
    for (const auto& mj : j.at("masses")) {
      ensure_keys(mj, {"point", "mass"}, "Measure mass");
      masses.push_back({mj.at("point").get<double>(), mj.at("mass").get<double>()});
    }
  return Measure(std::move(density), std::move(masses));
}

ordered_json to_json(const ClassPoint& c) {
  ordered_json j;
  j["m"] = c.m;
  j["p"] = c.p;
  j["values"] = c.values;
  return j;
}

ordered_json to_json(const Profile& c) {
  ordered_json j;
  j["m"] = c.m();
  j["p"] = c.p();
  j["objects"] = ordered_json::array();
  for (int obj = 0; obj < c.m(); ++obj) {
    ordered_json row;
    row["types"] = ordered_json::array();
    for (int t = 0; t < c.p(); ++t) row["types"].push_back(to_json(c.entry(obj, t)));
    j["objects"].push_back(std::move(row));
  }
  return j;
}

Profile profile_from_json(const ordered_json& j) {
  ensure_keys(j, {"m", "p", "objects"}, "Profile");
  const int m = j.at("m").get<int>();
  const int p = j.at("p").get<int>();
  std::vector<std::vector<PiecewiseFn>> entries;
  for (const auto& row : j.at("objects")) {
    ensure_keys(row, {"types"}, "Profile object");
    std::vector<PiecewiseFn> fns;
    for (const auto& fj : row.at("types")) fns.push_back(piecewise_from_json(fj));
    entries.push_back(std::move(fns));
  }
  return Profile(m, p, std::move(entries));
}

ordered_json to_json(const AxiomReport& r) {
  ordered_json j;
  j["axiom"] = r.axiom;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["probes"] = r.probes;
  j["tol"] = r.tol;
  if (r.grid_n > 0) j["grid_n"] = r.grid_n;
  if (r.witness) {
    const AxiomWitness& w = *r.witness;
    ordered_json wj;
    wj["profiles"] = ordered_json::array();
    for (const Profile& probe : w.profiles) wj["profiles"].push_back(to_json(probe));
    wj["object"] = w.object;
    wj["type"] = w.type;
    wj["object2"] = w.object2;
    wj["location"] = w.location;
    wj["observed"] = w.observed;
    wj["expected"] = w.expected;
    wj["deviation"] = w.deviation;
    wj["note"] = w.note;
    j["witness"] = std::move(wj);
  }
  return j;
}

ordered_json to_json(const ImplicationReport& r) {
  ordered_json j;
  j["consistent"] = r.consistent;
  j["violations"] = r.violations;
  j["total_probes"] = r.total_probes;
  ordered_json verdicts;
  for (const auto& [name, axioms] : r.verdicts) {
    ordered_json row;
    for (const std::string& id : axiom_ids()) {
      auto it = axioms.find(id);
      if (it != axioms.end()) row[id] = it->second ? "pass" : "fail";
    }
    verdicts[name] = std::move(row);
  }
  j["verdicts"] = std::move(verdicts);
  return j;
}

ordered_json to_json(const ExtractionResult& r) {
  ordered_json j;
  j["grid"] = r.grid;
  j["cdf_values"] = r.cdf_values;
  j["detected_atoms"] = ordered_json::array();
  for (const PointMass& pm : r.detected_atoms)
    j["detected_atoms"].push_back({{"point", pm.point}, {"mass", pm.mass}});
  j["reconstructed"] = to_json(r.reconstructed);
  j["max_type_deviation"] = r.max_type_deviation;
  j["match_deviation"] = r.match_deviation;
  j["single_type"] = r.single_type;
  return j;
}

ordered_json to_json(const AdditivityReport& r) {
  ordered_json j;
  j["max_deviation"] = r.max_deviation;
  j["probes"] = r.probes;
  j["skipped"] = r.skipped;
  j["worst_f"] = r.worst_f;
  j["worst_g"] = r.worst_g;
  j["worst_fg"] = r.worst_fg;
  j["note"] = r.note;
  return j;
}

ordered_json to_json(const HTable& t) {
  ordered_json j;
  j["u"] = t.u;
  j["h_hat"] = t.h_hat;
  j["max_oddness"] = t.max_oddness;
  j["fixed_points_ok"] = t.fixed_points_ok;
  return j;
}

ordered_json to_json(const Example1Report& r) {
  ordered_json j;
  j["table"] = to_json(r.table);
  j["exact"] = r.exact;
  ordered_json deviations = ordered_json::array();
  for (int obj = 0; obj < r.table.m; ++obj) {
    ordered_json row = ordered_json::array();
    for (int t = 0; t < r.table.p; ++t)
      row.push_back(std::abs(r.table.at(obj, t) -
                             r.exact[static_cast<std::size_t>(obj)][static_cast<std::size_t>(t)]));
    deviations.push_back(std::move(row));
  }
  j["deviations"] = std::move(deviations);
  j["max_deviation"] = r.max_deviation;
  auto curves = [](const std::vector<CurveSample>& samples) {
    ordered_json arr = ordered_json::array();
    for (const CurveSample& s : samples) arr.push_back({{"i", s.i}, {"values", s.values}});
    return arr;
  };
  j["curve_x1"] = curves(r.curve_x1);
  j["curve_x2"] = curves(r.curve_x2);
  return j;
}

Fcaf aggregator_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("aggregator spec: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "weighted_mean") {
    ensure_keys(j, {"kind", "measure", "name"}, "weighted_mean spec");
    Measure mu = measure_from_json(j.at("measure"));
    return weighted_mean(std::move(mu), j.value("name", std::string("weighted_mean")));
  }
  if (kind == "dictator") {
    ensure_keys(j, {"kind", "i"}, "dictator spec");
    return dictator(j.at("i").get<double>());
  }
  if (kind == "prop2_nonoptimal") {
    ensure_keys(j, {"kind"}, "prop2 spec");
    return prop2_nonoptimal();
  }
  if (kind == "prop2_nonindependent") {
    ensure_keys(j, {"kind"}, "prop2 spec");
    return prop2_nonindependent();
  }
  if (kind == "prop2_nonzerounanimous") {
    ensure_keys(j, {"kind"}, "prop2 spec");
    return prop2_nonzerounanimous();
  }
  if (kind == "prop2_dictator") {
    ensure_keys(j, {"kind"}, "prop2 spec");
    return prop2_dictator();
  }
  if (kind == "odd_h_mean") {
    ensure_keys(j, {"kind", "variant", "measure"}, "odd_h_mean spec");
    const std::string variant = j.at("variant").get<std::string>();
    if (variant != "linear" && variant != "cube")
      throw std::invalid_argument("odd_h_mean spec: variant must be 'linear' or 'cube'");
    Measure mu = j.contains("measure") ? measure_from_json(j.at("measure")) : Measure::lebesgue();
    return odd_h_mean(variant == "linear" ? OddKind::linear : OddKind::cube, std::move(mu));
  }
  if (kind == "per_type_mean") {
    ensure_keys(j, {"kind", "measures"}, "per_type_mean spec");
    std::vector<Measure> mus;
    for (const auto& mj : j.at("measures")) mus.push_back(measure_from_json(mj));
    return per_type_mean(std::move(mus));
  }
  throw std::invalid_argument("aggregator spec: unknown kind '" + kind + "'");
}

}  // namespace fcagg
