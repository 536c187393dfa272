#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcagg/piecewise.hpp"

namespace fcagg {

// One social classification: m objects, p types, row j is the distribution
// of object j over the types. Rows sum to 1; every column covers total
// proportion >= 1 (which forces m >= p).
struct ClassPoint {
  int m = 0;
  int p = 0;
  std::vector<std::vector<double>> values;  // m rows of p entries

  double at(int object, int type) const { return values[static_cast<std::size_t>(object)][static_cast<std::size_t>(type)]; }
};

struct ClassPointCheck {
  bool ok = true;
  std::string message;
};

ClassPointCheck validate_class_point(const ClassPoint& c, double tol = 1e-9);

// Classification profile over the continuum of individuals [0,1]: an m x p
// grid of entry functions. Objects and types are 0-based here (the anchor
// object of the probe constructions is object 0, the anchor type is type 0).
class Profile {
 public:
  Profile(int m, int p, std::vector<std::vector<PiecewiseFn>> entries);

  int m() const { return m_; }
  int p() const { return p_; }
  const PiecewiseFn& entry(int object, int type) const;
  Profile with_entry(int object, int type, PiecewiseFn fn) const;

  // pointwise classification of individual i (atom-aware)
  ClassPoint at(double i) const;

 private:
  int m_;
  int p_;
  std::vector<std::vector<PiecewiseFn>> entries_;
};

struct ProfileViolation {
  std::string constraint;  // "shape" | "entry_range" | "row_sum" | "column_sum"
  int object = -1;
  int type = -1;
  double location = 0.0;
  double observed = 0.0;
};

struct ProfileReport {
  bool pass = true;
  std::optional<ProfileViolation> violation;
};

// Checks entry ranges, row sums (identically 1, including at atom points)
// and column sums (>= 1 everywhere, including at atom points). For m == p
// the column sums are additionally required to be identically 1, which is
// forced by the two constraints together.
ProfileReport validate_profile(const Profile& c, double tol = 1e-9);

// The six-object illustration profile: (m,p) = (6,3) with rows
//   x0 = (2i/3, 1/3, 2(1-i)/3)
//   x1 = ((1-i)^3, 3i(1-i), i^3)
//   x2 = (delta_0, 1 - delta_0 - delta_1, delta_1)
//   x3..x5 = the three vertices.
Profile example1_profile();

// Object 0 classifies as e_t on J and e_0 off J; the remaining objects are
// constants completing both constraints (for m == p, object 1 carries the
// complementary swap and the rest cover the remaining types bijectively).
// contrast_type must be >= 1.
Profile indicator_probe_profile(int m, int p, int contrast_type, const IntervalSet& J);

// Deterministic in seed: valid profile built from the uniform base with
// row-sum-preserving piecewise-polynomial perturbations of sup-norm
// <= amplitude (clamped to feasibility).
Profile random_profile(std::uint64_t seed, int m, int p, int pieces, double amplitude);

// Valid profile whose type-`type` column sum is identically `column_sum`.
// Feasible iff 1 <= column_sum <= m - p + 1.
Profile constant_column_profile(std::uint64_t seed, int m, int p, int type, double column_sum);

// Two valid profiles that agree a.e. on the rows of `object` (they may
// differ there by interior atoms) and differ on a positive-measure set on
// another object. The differing row flips the ordering of the first two
// objects' type-0 Lebesgue integrals when possible, so partition-style
// aggregators are exercised across their boundary.
std::pair<Profile, Profile> agreeing_pair(std::uint64_t seed, int m, int p, int object);

}  // namespace fcagg
