#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcagg/aggregator.hpp"
#include "fcagg/measure.hpp"

namespace fcagg {

// A black box returned an invalid classification during extraction probing.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(const std::string& what, std::string probe_note)
      : std::runtime_error(what), probe_note_(std::move(probe_note)) {}
  const std::string& probe_note() const { return probe_note_; }

 private:
  std::string probe_note_;
};

struct ExtractionConfig {
  int grid_n = 21;           // reported CDF grid (per contrast type)
  int fine_n = 4096;         // uniform fine grid backing the reconstruction
  int validation_n = 100;    // random profiles for the match check
  std::uint64_t seed = 2024;
  Shape shape{6, 3};         // m >= 3 required
  double atom_threshold = 1e-6;
  double tol = 1e-9;
};

// The constructive content of the representation theorem, run against a
// black box: per contrast type t >= 1, mu^t([0,x]) is read off the output
// of the prefix-indicator probe profile at object 0, type t.
struct ExtractionResult {
  std::vector<double> grid;
  std::vector<std::vector<double>> cdf_values;  // [t - 1][grid index]
  std::vector<PointMass> detected_atoms;
  Measure reconstructed;
  double max_type_deviation = 0.0;  // max over types/points of CDF disagreement
  double match_deviation = 0.0;     // black box vs weighted_mean(reconstructed)
  bool single_type = false;         // p == 2: consistency is vacuous
};

// Probes the CDF on the report grid for every contrast type, then rebuilds
// the measure from a fine prefix scan of type 1: CDF jumps are bisected into
// point masses, density steps inside a cell are bisected and the cell is
// split at the step, and the remaining increments become a slope-limited
// piecewise-linear density. match_deviation compares the black box with the
// weighted mean of the reconstruction on validation_n random profiles.
ExtractionResult extract_measure(const Fcaf& alpha, const ExtractionConfig& cfg = {});

// true iff the recovered per-type CDFs agree within tol
bool consistency_check(const ExtractionResult& r, double tol);

struct AdditivityReport {
  double max_deviation = 0.0;
  int probes = 0;
  int skipped = 0;
  double worst_f = 0.0;       // responses at the worst probe
  double worst_g = 0.0;
  double worst_fg = 0.0;
  std::string note;
};

// Cauchy-equation probe of the per-entry response around the uniform base
// profile: for perturbations f, g of sup-norm <= 1/(2m), checks
// resp(f+g) = resp(f) + resp(g). Weighted means are additive to rounding;
// the cube aggregator deviates by >= 0.05 at the structured witness.
AdditivityReport additivity_probe(const Fcaf& alpha, std::uint64_t seed, int probes,
                                  Shape shape = {6, 3});

struct HTable {
  std::vector<double> u;       // grid offsets a - 1/2
  std::vector<double> h_hat;   // alpha(constant-a profile)(x0)_0 - 1/2
  double max_oddness = 0.0;    // max |h(u) + h(-u)| over the grid
  bool fixed_points_ok = false;  // h(1/2) = 1/2 and h(-1/2) = -1/2
};

// Tabulates the odd representer of an m = p = 2 aggregator on constant
// profiles. Refuses (throws) unless the symmetry and zero-unanimity suites
// pass first.
HTable extract_h(const Fcaf& alpha, int grid_n);

struct CurveSample {
  double i;
  std::vector<double> values;
};

struct Example1Report {
  ClassPoint table;                         // weighted mean with density 3i^2
  std::vector<std::vector<double>> exact;   // the known closed-form table
  double max_deviation = 0.0;
  std::vector<CurveSample> curve_x1;        // sampled entry curves of object 0
  std::vector<CurveSample> curve_x2;        // and object 1
};

Example1Report example1_report();

// Per-type weighted mean with row renormalization: integrates type t against
// measures[t]. Deliberately inconsistent across types when the measures
// differ; used to demonstrate a failing consistency check.
Fcaf per_type_mean(std::vector<Measure> measures);

}  // namespace fcagg
