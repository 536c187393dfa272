#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fcagg/aggregator.hpp"
#include "fcagg/rng.hpp"
#include "test_util.hpp"

using namespace fcagg;

namespace {

Measure w3i2() { return Measure::from_density(PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 3.0}))); }

Profile constant_profile(int m, int p, const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<PiecewiseFn>> entries;
  for (const auto& row : rows) {
    std::vector<PiecewiseFn> fns;
    for (double v : row) fns.push_back(PiecewiseFn::constant(v));
    entries.push_back(std::move(fns));
  }
  return Profile(m, p, std::move(entries));
}

Profile two_by_two_constant(double a) {
  return constant_profile(2, 2, {{a, 1.0 - a}, {1.0 - a, a}});
}

}  // namespace

TEST_CASE("weighted mean reproduces the full illustration table") {
  const ClassPoint out = weighted_mean(w3i2())(example1_profile());
  const double expected[6][3] = {{0.5, 1.0 / 3.0, 1.0 / 6.0}, {0.05, 0.45, 0.5}, {0.0, 1.0, 0.0},
                                 {1.0, 0.0, 0.0},             {0.0, 1.0, 0.0},   {0.0, 0.0, 1.0}};
  for (int j = 0; j < 6; ++j)
    for (int t = 0; t < 3; ++t) CHECK_NEAR(out.at(j, t), expected[j][t], 1e-12);
}

TEST_CASE("weighted mean of a constant profile is the constant") {
  const Profile c = constant_profile(6, 3, {{0.2, 0.5, 0.3},
                                            {0.1, 0.6, 0.3},
                                            {1.0, 0.0, 0.0},
                                            {0.0, 1.0, 0.0},
                                            {0.0, 0.0, 1.0},
                                            {0.4, 0.3, 0.3}});
  const ClassPoint out = weighted_mean(mixture(w3i2(), Measure::dirac(0.7), 0.5))(c);
  for (int j = 0; j < 6; ++j)
    for (int t = 0; t < 3; ++t) CHECK_NEAR(out.at(j, t), c.entry(j, t)(0.0), 1e-14);
}

TEST_CASE("dictator reads pointwise, atoms included") {
  const Profile e1 = example1_profile();
  const ClassPoint quarter = dictator(0.25)(e1);
  CHECK_NEAR(quarter.at(0, 0), 1.0 / 6.0, 1e-14);
  CHECK_NEAR(quarter.at(0, 1), 1.0 / 3.0, 1e-14);
  CHECK_NEAR(quarter.at(0, 2), 0.5, 1e-14);

  const ClassPoint zero = dictator(0.0)(e1);
  CHECK(zero.at(2, 0) == 1.0);
  CHECK(zero.at(2, 1) == 0.0);
  CHECK(zero.at(2, 2) == 0.0);

  const ClassPoint half = dictator(0.5)(e1);
  CHECK_NEAR(half.at(1, 0), 0.125, 1e-14);
  CHECK_NEAR(half.at(1, 1), 0.75, 1e-14);
  CHECK_NEAR(half.at(1, 2), 0.125, 1e-14);

  CHECK_THROWS_AS(dictator(1.5), std::invalid_argument);
}

TEST_CASE("weighted_mean(dirac(i)) agrees with dictator(i) exactly") {
  Rng rng(61);
  for (int k = 0; k < 10; ++k) {
    const double i = rng.next_unit();
    const Fcaf a = weighted_mean(Measure::dirac(i));
    const Fcaf b = dictator(i);
    const Profile probe = random_profile(rng.next_u64(), 5, 3, 3, 0.1);
    const ClassPoint oa = a(probe), ob = b(probe);
    for (int j = 0; j < 5; ++j)
      for (int t = 0; t < 3; ++t) CHECK(oa.at(j, t) == ob.at(j, t));
  }
  const ClassPoint oa = weighted_mean(Measure::dirac(0.0))(example1_profile());
  const ClassPoint ob = dictator(0.0)(example1_profile());
  for (int t = 0; t < 3; ++t) CHECK(oa.at(2, t) == ob.at(2, t));
}

TEST_CASE("prop2_nonoptimal: vertex pass-through, uniform fallback") {
  const Fcaf alpha = prop2_nonoptimal();
  const ClassPoint out = alpha(example1_profile());
  CHECK(out.at(3, 0) == 1.0);                  // c_0(x_3) is a vertex
  CHECK_NEAR(out.at(0, 0), 1.0 / 3.0, 1e-15);  // c_0(x_0) = (0, 1/3, 2/3)
  CHECK_NEAR(out.at(0, 1), 1.0 / 3.0, 1e-15);
  CHECK(out.at(2, 0) == 1.0);                  // c_0(x_2) = e_0 via the delta_0 atom

  const Profile all_e0 = constant_profile(3, 3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  const ClassPoint vertex_out = alpha(all_e0);
  for (int j = 0; j < 3; ++j) CHECK(vertex_out.at(j, 0) == 1.0);
}

TEST_CASE("prop2_nonindependent switches between the endpoint dictators") {
  const Fcaf alpha = prop2_nonindependent();
  // side A: object 0's type-0 mean exceeds object 1's
  const Profile side_a = constant_profile(3, 3, {{0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6}});
  REQUIRE(validate_profile(side_a).pass);
  CHECK_NEAR(alpha(side_a).at(0, 0), 0.6, 1e-15);

  // rows vary in i so the two endpoint dictators disagree
  const PiecewiseFn ramp = PiecewiseFn::from_poly(Polynomial({0.25, 0.1}));
  const PiecewiseFn anti = linear_combine(1.0, PiecewiseFn::constant(0.75), -1.0, ramp);
  const std::vector<PiecewiseFn> varying_row = {ramp, anti, PiecewiseFn::constant(0.25)};
  const std::vector<PiecewiseFn> r1 = {PiecewiseFn::constant(0.2), PiecewiseFn::constant(0.4),
                                       PiecewiseFn::constant(0.4)};
  const std::vector<PiecewiseFn> r2 = {PiecewiseFn::constant(0.6), PiecewiseFn::constant(0.2),
                                       PiecewiseFn::constant(0.2)};
  const std::vector<PiecewiseFn> r3 = {PiecewiseFn::constant(0.2), PiecewiseFn::constant(0.2),
                                       PiecewiseFn::constant(0.6)};
  const Profile varying(4, 3, {varying_row, r1, r2, r3});
  REQUIRE(validate_profile(varying).pass);
  // means are 0.3 vs 0.2, side A, so reads i = 0
  CHECK_NEAR(alpha(varying).at(0, 0), 0.25, 1e-14);

  // flip object 0 and 1: now side B, reads i = 1
  const Profile flipped(4, 3, {r1, varying_row, r2, r3});
  REQUIRE(validate_profile(flipped).pass);
  CHECK_NEAR(alpha(flipped).at(1, 0), 0.35, 1e-14);
}

TEST_CASE("prop2_nonzerounanimous swaps the first two outputs of the i=0 dictator") {
  const Fcaf alpha = prop2_nonzerounanimous();
  const ClassPoint out = alpha(example1_profile());
  CHECK(out.at(0, 0) == 1.0);  // c_0(x_1) = (1, 0, 0)
  CHECK(out.at(1, 0) == 0.0);  // c_0(x_0) = (0, 1/3, 2/3)
  CHECK_NEAR(out.at(1, 1), 1.0 / 3.0, 1e-15);
  CHECK(out.at(2, 0) == 1.0);  // other objects pass through

  const Profile symmetric = constant_profile(2, 2, {{0.5, 0.5}, {0.5, 0.5}});
  const ClassPoint fixed = alpha(symmetric);
  CHECK_NEAR(fixed.at(0, 0), 0.5, 1e-15);
  CHECK_NEAR(fixed.at(1, 0), 0.5, 1e-15);
}

TEST_CASE("odd_h_mean closed forms") {
  const Fcaf cube = odd_h_mean(OddKind::cube, Measure::lebesgue());
  const Fcaf linear = odd_h_mean(OddKind::linear, Measure::lebesgue());

  CHECK_NEAR(cube(two_by_two_constant(0.75)).at(0, 0), 9.0 / 16.0, 1e-14);
  CHECK_NEAR(cube(two_by_two_constant(0.0)).at(0, 0), 0.0, 1e-14);
  CHECK_NEAR(cube(two_by_two_constant(1.0)).at(0, 0), 1.0, 1e-14);
  CHECK_NEAR(linear(two_by_two_constant(0.0)).at(0, 0), 0.0, 1e-14);
  CHECK_NEAR(linear(two_by_two_constant(1.0)).at(0, 0), 1.0, 1e-14);
  CHECK_NEAR(linear(two_by_two_constant(0.75)).at(0, 0), 0.75, 1e-14);

  CHECK_THROWS_AS(cube(example1_profile()), std::invalid_argument);
}

TEST_CASE("shipped aggregators emit valid classifications on valid profiles") {
  Rng rng(71);
  for (const Fcaf& alpha : shipped_gallery()) {
    const Shape s = alpha.required_shape.value_or(Shape{6, 3});
    for (int k = 0; k < 5; ++k) {
      const Profile probe = random_profile(rng.next_u64(), s.m, s.p, 3, 0.08);
      REQUIRE(validate_profile(probe).pass);
      const ClassPointCheck check = validate_class_point(alpha(probe));
      CHECK(check.ok);
    }
  }
}

TEST_CASE("weighted mean outputs satisfy both constraints on structured probes") {
  const Fcaf mean = weighted_mean(mixture(w3i2(), Measure::dirac(0.3), 0.5));
  const Profile probes[] = {example1_profile(), indicator_probe_profile(6, 3, 2, {{0.1, 0.6}}),
                            constant_column_profile(17, 6, 3, 2, 1.5)};
  for (const Profile& probe : probes) {
    const ClassPointCheck check = validate_class_point(mean(probe));
    CHECK(check.ok);
  }
}
