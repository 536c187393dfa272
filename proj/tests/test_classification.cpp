#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fcagg/classification.hpp"
#include "fcagg/json_io.hpp"
#include "fcagg/rng.hpp"
#include "test_util.hpp"

using namespace fcagg;

namespace {

Profile two_by_two(const PiecewiseFn& f) {
  const PiecewiseFn comp = linear_combine(1.0, PiecewiseFn::constant(1.0), -1.0, f);
  return Profile(2, 2, {{f, comp}, {comp, f}});
}

}  // namespace

TEST_CASE("example1 profile: entries and validation") {
  const Profile c = example1_profile();
  CHECK_NEAR(c.entry(1, 1)(0.5), 0.75, 1e-15);
  CHECK(c.entry(2, 0)(0.0) == 1.0);
  CHECK(c.entry(2, 0)(0.5) == 0.0);
  CHECK(c.entry(2, 2)(1.0) == 1.0);
  CHECK(validate_profile(c).pass);
}

TEST_CASE("validator reports the first violated constraint with a witness") {
  const Profile base = example1_profile();
  // shrink one entry so the row sums to 0.9
  const Profile bad_row = base.with_entry(0, 1, PiecewiseFn::constant(1.0 / 3.0 - 0.1));
  const ProfileReport r = validate_profile(bad_row);
  REQUIRE_FALSE(r.pass);
  CHECK(r.violation->constraint == "row_sum");
  CHECK(r.violation->object == 0);

  // entry outside [0,1]
  const Profile bad_range =
      base.with_entry(0, 1, PiecewiseFn::constant(1.0 / 3.0).with_atom(0.5, 1.4));
  const ProfileReport r2 = validate_profile(bad_range);
  REQUIRE_FALSE(r2.pass);
  CHECK(r2.violation->constraint == "entry_range");

  // m == p: columns must be identically 1
  const PiecewiseFn f = PiecewiseFn::constant(0.6);
  const PiecewiseFn g = PiecewiseFn::constant(0.4);
  const Profile skew(2, 2, {{f, g}, {f, g}});
  const ProfileReport r3 = validate_profile(skew);
  REQUIRE_FALSE(r3.pass);
  CHECK(r3.violation->constraint == "column_sum");
}

TEST_CASE("two-by-two profiles parametrized by one function are valid") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.2, 0.5}));
  CHECK(validate_profile(two_by_two(f)).pass);
}

TEST_CASE("indicator probe profile") {
  const Profile c = indicator_probe_profile(6, 3, 1, {{0.0, 0.5}});
  CHECK(c.entry(0, 1)(0.25) == 1.0);
  CHECK(c.entry(0, 1)(0.5) == 1.0);
  CHECK(c.entry(0, 1)(0.75) == 0.0);
  CHECK(c.entry(0, 0)(0.75) == 1.0);
  CHECK(validate_profile(c).pass);

  const Profile empty = indicator_probe_profile(6, 3, 1, {});
  CHECK(ae_equal(empty.entry(0, 0), PiecewiseFn::constant(1.0), 0.0));
  CHECK(ae_equal(empty.entry(0, 1), PiecewiseFn::constant(0.0), 0.0));

  // m == p: the construction forces every column sum to be identically 1
  const Profile square = indicator_probe_profile(3, 3, 1, {{0.0, 1.0}});
  CHECK(validate_profile(square).pass);
  const Profile square2 = indicator_probe_profile(4, 4, 2, {{0.25, 0.6}});
  CHECK(validate_profile(square2).pass);

  CHECK_THROWS_AS(indicator_probe_profile(6, 3, 0, {{0.0, 0.5}}), std::invalid_argument);

  // finite unions work through the same interface
  const Profile unions = indicator_probe_profile(6, 3, 2, {{0.1, 0.2}, {0.5, 0.6}});
  CHECK(validate_profile(unions).pass);
  CHECK(unions.entry(0, 2)(0.15) == 1.0);
  CHECK(unions.entry(0, 2)(0.35) == 0.0);
  CHECK(unions.entry(0, 0)(0.35) == 1.0);
}

TEST_CASE("indicator probes of J and its complement cover e_0 + e_t") {
  const Profile a = indicator_probe_profile(6, 3, 2, {{0.0, 0.4}});
  const Profile b = indicator_probe_profile(6, 3, 2, {{0.4, 1.0}});
  for (int t = 0; t < 3; ++t) {
    const PiecewiseFn sum = linear_combine(1.0, a.entry(0, t), 1.0, b.entry(0, t));
    const double expected = (t == 0 || t == 2) ? 1.0 : 0.0;
    CHECK(ae_equal(sum, PiecewiseFn::constant(expected), 1e-12));
  }
}

TEST_CASE("random_profile: determinism, degenerate amplitude, validity") {
  const Profile a = random_profile(42, 4, 3, 3, 0.1);
  const Profile b = random_profile(42, 4, 3, 3, 0.1);
  CHECK(to_json(a).dump() == to_json(b).dump());

  const Profile flat = random_profile(7, 5, 3, 3, 0.0);
  for (int j = 0; j < 5; ++j)
    for (int t = 0; t < 3; ++t)
      CHECK(ae_equal(flat.entry(j, t), PiecewiseFn::constant(1.0 / 3.0), 0.0));

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CHECK(validate_profile(random_profile(seed, 6, 3, 3, 0.08)).pass);
    CHECK(validate_profile(random_profile(seed, 3, 3, 2, 0.1)).pass);
    CHECK(validate_profile(random_profile(seed, 2, 2, 3, 0.2)).pass);
    CHECK(validate_profile(random_profile(seed, 5, 2, 4, 0.15)).pass);
  }
}

TEST_CASE("constant_column_profile pins one column sum") {
  const Profile unit = constant_column_profile(5, 6, 3, 1, 1.0);
  CHECK(validate_profile(unit).pass);
  PiecewiseFn sum = PiecewiseFn::constant(0.0);
  for (int j = 0; j < 6; ++j) sum = linear_combine(1.0, sum, 1.0, unit.entry(j, 1));
  for (const Polynomial& piece : sum.pieces()) {
    CHECK_NEAR(piece.coeff(0), 1.0, 1e-12);
    for (int d = 1; d <= piece.degree(); ++d) CHECK_NEAR(piece.coeff(d), 0.0, 1e-12);
  }

  const Profile two = constant_column_profile(9, 6, 3, 1, 2.0);
  CHECK(validate_profile(two).pass);
  for (int k = 0; k <= 1000; ++k) {
    const double i = k / 1000.0;
    double total = 0.0;
    for (int j = 0; j < 6; ++j) total += two.entry(j, 1)(i);
    CHECK_NEAR(total, 2.0, 1e-12);
  }

  CHECK_THROWS_AS(constant_column_profile(1, 6, 3, 1, 4.5), std::invalid_argument);
  CHECK_THROWS_AS(constant_column_profile(1, 6, 3, 1, 0.5), std::invalid_argument);
}

TEST_CASE("agreeing_pair: designated row agrees a.e., another differs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (int j : {0, 2, 5}) {
      const auto [a, b] = agreeing_pair(seed, 6, 3, j);
      CHECK(validate_profile(a).pass);
      CHECK(validate_profile(b).pass);
      for (int t = 0; t < 3; ++t) CHECK(ae_equal(a.entry(j, t), b.entry(j, t), 1e-12));
      bool differs = false;
      for (int obj = 0; obj < 6; ++obj) {
        if (obj == j) continue;
        for (int t = 0; t < 3; ++t)
          differs = differs || !ae_equal(a.entry(obj, t), b.entry(obj, t), 1e-9);
      }
      CHECK(differs);
    }
  }
}

TEST_CASE("agreeing_pair at m = p = 2 differs only by atoms") {
  const auto [a, b] = agreeing_pair(3, 2, 2, 0);
  CHECK(validate_profile(a).pass);
  CHECK(validate_profile(b).pass);
  bool some_atom_differs = false;
  for (int j = 0; j < 2; ++j)
    for (int t = 0; t < 2; ++t) {
      CHECK(ae_equal(a.entry(j, t), b.entry(j, t), 0.0));
      some_atom_differs =
          some_atom_differs || a.entry(j, t).atoms().size() != b.entry(j, t).atoms().size();
    }
  CHECK(some_atom_differs);
}

TEST_CASE("profile accessors and shape checks") {
  const Profile c = example1_profile();
  CHECK(c.m() == 6);
  CHECK(c.p() == 3);
  CHECK_THROWS_AS(c.entry(6, 0), std::out_of_range);
  CHECK_THROWS_AS(Profile(1, 2, {{PiecewiseFn::constant(1.0), PiecewiseFn::constant(0.0)}}),
                  std::invalid_argument);

  const ClassPoint point = c.at(0.25);
  CHECK_NEAR(point.at(0, 0), 1.0 / 6.0, 1e-14);
  CHECK(validate_class_point(point).ok);

  ClassPoint bad = point;
  bad.values[0][0] += 0.2;
  CHECK_FALSE(validate_class_point(bad).ok);
}
