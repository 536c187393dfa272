#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcagg/aggregator.hpp"

namespace fcagg {

// Shared configuration of the falsification suites. Every probe is derived
// from `seed` through counter-based substreams, so a suite is a pure
// function of (aggregator, config).
struct CheckConfig {
  std::uint64_t seed = 2024;
  int probes = 50;
  double tol = 1e-9;
  int grid_n = 64;    // non-dictatorship grid resolution
  Shape shape{6, 3};  // default probe shape; an aggregator's required_shape wins
};

struct AxiomWitness {
  std::vector<Profile> profiles;  // the probe profile(s) that exposed the violation
  int object = -1;
  int type = -1;
  int object2 = -1;    // partner object for symmetry pairs
  double location = 0.0;
  double observed = 0.0;
  double expected = 0.0;
  double deviation = 0.0;
  std::string note;
};

// PASS is one-sided: no counterexample among `probes` probes. FAIL carries a
// witness that re-evaluates to a violation of `tol` (see replay_confirms).
struct AxiomReport {
  std::string axiom;
  bool pass = true;
  int probes = 0;
  double tol = 0.0;
  int grid_n = 0;  // set for the grid-relative non-dictatorship verdict
  std::optional<AxiomWitness> witness;
};

AxiomReport check_optimality(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_independence(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_symmetry(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_zero_unanimity(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_unanimity(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_coherence(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_non_dictatorship(const Fcaf& alpha, const CheckConfig& cfg = {});
AxiomReport check_anonymity(const Fcaf& alpha, const CheckConfig& cfg = {});

AxiomReport check_axiom(const std::string& axiom, const Fcaf& alpha, const CheckConfig& cfg = {});
std::vector<AxiomReport> run_all_axioms(const Fcaf& alpha, const CheckConfig& cfg = {});

// Re-evaluates a FAIL report's witness against the aggregator: true iff the
// stored violation reproduces beyond the report's tolerance.
bool replay_confirms(const Fcaf& alpha, const AxiomReport& report);

// Single-probe predicates, usable with hand-built profiles.
std::optional<AxiomWitness> coherence_violation(const Fcaf& alpha, const Profile& probe, double tol);
std::optional<AxiomWitness> optimality_violation(const Fcaf& alpha, const Profile& probe, int type,
                                                 double column_sum, double tol);

struct ImplicationReport {
  bool consistent = true;
  std::vector<std::string> violations;  // "name: strong -> weak"
  std::map<std::string, std::map<std::string, bool>> verdicts;
  int total_probes = 0;
};

// Runs every checker on every aggregator and asserts that none passes a
// stronger axiom while failing its weaker consequence (symmetry ->
// independence, coherence -> unanimity -> zero unanimity, anonymity ->
// non-dictatorship).
ImplicationReport implication_matrix(const std::vector<Fcaf>& gallery, const CheckConfig& cfg = {});

}  // namespace fcagg
