#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fcagg/measure.hpp"
#include "fcagg/piecewise.hpp"
#include "fcagg/rng.hpp"
#include "test_util.hpp"

using namespace fcagg;

TEST_CASE("polynomial basics") {
  const Polynomial p({1.0, -3.0, 3.0, -1.0});  // (1-i)^3
  CHECK_NEAR(p(0.0), 1.0, 1e-15);
  CHECK_NEAR(p(0.5), 0.125, 1e-15);
  CHECK_NEAR(p(1.0), 0.0, 1e-15);
  CHECK_NEAR(p.integral(0.0, 1.0), 0.25, 1e-15);

  const Polynomial shifted = p.shifted(0.25);  // p(i + 1/4)
  CHECK_NEAR(shifted(0.25), p(0.5), 1e-14);
  CHECK_NEAR(shifted(0.0), p(0.25), 1e-14);

  const Polynomial prod = p * Polynomial({0.0, 1.0});
  CHECK_NEAR(prod(0.3), 0.3 * p(0.3), 1e-14);
}

TEST_CASE("quadratic roots") {
  auto r = quadratic_roots(2.0, -3.0, 1.0);  // (x-1)(x-2)
  REQUIRE(r.size() == 2);
  CHECK_NEAR(r[0], 1.0, 1e-12);
  CHECK_NEAR(r[1], 2.0, 1e-12);
  CHECK(quadratic_roots(1.0, 0.0, 1.0).empty());
  r = quadratic_roots(-1.0, 2.0, 0.0);  // linear fallback
  REQUIRE(r.size() == 1);
  CHECK_NEAR(r[0], 0.5, 1e-15);
}

TEST_CASE("eval: pieces, atoms, domain") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.0, 2.0 / 3.0}));
  CHECK_NEAR(f(0.75), 0.5, 1e-15);

  const PiecewiseFn d0 = PiecewiseFn::constant(0.0).with_atom(0.0, 1.0);
  CHECK(d0(0.0) == 1.0);
  CHECK(d0(0.5) == 0.0);

  CHECK(PiecewiseFn::constant(1.0)(0.3) == 1.0);
  CHECK_THROWS_AS(f(-0.1), std::domain_error);
  CHECK_THROWS_AS(f(1.1), std::domain_error);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(PiecewiseFn({0.0, 0.5}, {Polynomial::constant(1.0)}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseFn({0.0, 0.5, 0.5, 1.0},
                              {Polynomial::constant(1.0), Polynomial::constant(1.0),
                               Polynomial::constant(1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseFn({0.0, 1.0}, {Polynomial::constant(1.0)},
                              {{0.5, 1.0}, {0.5, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseFn({0.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("ae_equal ignores atoms and representation") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.0, 1.0}));
  CHECK(ae_equal(f, f.with_atom(0.5, 0.9), 0.0));

  const PiecewiseFn g = PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 1.0}));
  CHECK_FALSE(ae_equal(f, g, 1e-9));

  const PiecewiseFn split({0.0, 0.5, 1.0}, {Polynomial({0.0, 1.0}), Polynomial({0.0, 1.0})});
  CHECK(ae_equal(f, split, 0.0));
}

TEST_CASE("ae_equal is an equivalence relation at tol 0") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const PiecewiseFn a = testutil::random_fn(rng);
    const PiecewiseFn b = testutil::random_fn(rng);
    const PiecewiseFn c = testutil::random_fn(rng);
    CHECK(ae_equal(a, a, 0.0));
    CHECK(ae_equal(a, b, 0.0) == ae_equal(b, a, 0.0));
    if (ae_equal(a, b, 0.0) && ae_equal(b, c, 0.0)) CHECK(ae_equal(a, c, 0.0));
    // a refinement of a is still equal to a
    const PiecewiseFn refined = linear_combine(1.0, a, 0.0, b);
    CHECK(ae_equal(a, refined, 0.0));
  }
}

TEST_CASE("linear_combine coefficients and cancellation") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.0, 2.0 / 3.0}));
  const PiecewiseFn g = PiecewiseFn::constant(1.0 / 3.0);
  const PiecewiseFn sum = linear_combine(1.0, f, 1.0, g);
  REQUIRE(sum.pieces().size() == 1);
  CHECK_NEAR(sum.pieces()[0].coeff(0), 1.0 / 3.0, 1e-15);
  CHECK_NEAR(sum.pieces()[0].coeff(1), 2.0 / 3.0, 1e-15);

  Rng rng(3);
  const PiecewiseFn h = testutil::random_fn(rng);
  const PiecewiseFn zero = linear_combine(1.0, h, -1.0, h);
  CHECK(ae_equal(zero, PiecewiseFn::constant(0.0), 0.0));
  for (const Atom& a : zero.atoms()) CHECK(a.value == 0.0);

  const PiecewiseFn mix =
      linear_combine(0.5, PiecewiseFn::from_poly(Polynomial({1.0, -3.0, 3.0, -1.0})), 0.5,
                     PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 0.0, 1.0})));
  CHECK_NEAR(mix(0.5), 0.125, 1e-15);
}

TEST_CASE("linear_combine matches pointwise combination") {
  Rng rng(11);
  for (int k = 0; k < 25; ++k) {
    const PiecewiseFn f = testutil::random_fn(rng);
    const PiecewiseFn g = testutil::random_fn(rng);
    const double a = rng.next_in(-2.0, 2.0), b = rng.next_in(-2.0, 2.0);
    const PiecewiseFn combo = linear_combine(a, f, b, g);
    for (int q = 0; q <= 20; ++q) {
      const double i = q / 20.0;
      CHECK_NEAR(combo(i), a * f(i) + b * g(i), 1e-12);
    }
    for (const Atom& atom : f.atoms())
      CHECK_NEAR(combo(atom.point), a * f(atom.point) + b * g(atom.point), 1e-12);
    for (const Atom& atom : g.atoms())
      CHECK_NEAR(combo(atom.point), a * f(atom.point) + b * g(atom.point), 1e-12);
  }
}

TEST_CASE("ess_bounds: critical points, atoms excluded") {
  const PiecewiseFn hump = PiecewiseFn::from_poly(Polynomial({0.0, 3.0, -3.0}));  // 3i(1-i)
  const Bounds b = ess_bounds(hump);
  CHECK_NEAR(b.lo, 0.0, 1e-15);
  CHECK_NEAR(b.hi, 0.75, 1e-15);

  const Bounds with_atom = ess_bounds(PiecewiseFn::constant(0.0).with_atom(0.0, 1.0));
  CHECK(with_atom.lo == 0.0);
  CHECK(with_atom.hi == 0.0);

  const Bounds linear = ess_bounds(PiecewiseFn::from_poly(Polynomial({0.0, 1.0})));
  CHECK(linear.lo == 0.0);
  CHECK(linear.hi == 1.0);
}

TEST_CASE("ess_bounds against the sampling oracle, atom-invariant") {
  Rng rng(23);
  for (int k = 0; k < 20; ++k) {
    const PiecewiseFn f = testutil::random_fn(rng, 4, 3, 2.0, 0);
    const Bounds exact = ess_bounds(f);
    const Bounds approx = testutil::sampled_bounds(f);
    CHECK(exact.lo <= approx.lo + 1e-12);
    CHECK(exact.hi >= approx.hi - 1e-12);
    CHECK_NEAR(exact.lo, approx.lo, 1e-6);
    CHECK_NEAR(exact.hi, approx.hi, 1e-6);

    PiecewiseFn g = f;
    for (int a = 0; a < 3; ++a) g = g.with_atom(rng.next_in(0.01, 0.99), rng.next_in(-50.0, 50.0));
    const Bounds with_atoms = ess_bounds(g);
    CHECK(with_atoms.lo == exact.lo);
    CHECK(with_atoms.hi == exact.hi);
  }
}

TEST_CASE("ess_bounds samples high-degree pieces") {
  // (2i-1)^4 has degree 4, so the exact-root path does not apply
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({1.0, -8.0, 24.0, -32.0, 16.0}));
  const Bounds b = ess_bounds(f);
  CHECK_NEAR(b.lo, 0.0, 1e-9);
  CHECK_NEAR(b.hi, 1.0, 1e-9);
}

TEST_CASE("range_within includes atoms") {
  const PiecewiseFn f = PiecewiseFn::constant(0.5);
  CHECK(range_within(f, 0.0, 1.0));
  CHECK_FALSE(range_within(f.with_atom(0.3, 1.5), 0.0, 1.0));
  CHECK(range_within(f.with_atom(0.3, 1.0), 0.0, 1.0));
}

TEST_CASE("swap_blocks: linear example and involution") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.0, 1.0}));
  const Interval J{0.0, 0.25};
  const PiecewiseFn swapped = swap_blocks(f, J, 0.5);
  CHECK_NEAR(swapped(0.1), 0.6, 1e-14);
  CHECK_NEAR(swapped(0.6), 0.1, 1e-14);
  CHECK_NEAR(swapped(0.4), 0.4, 1e-14);

  const PiecewiseFn twice = swap_blocks(swapped, J, 0.5);
  CHECK(ae_equal(twice, f, 1e-12));

  const PiecewiseFn c = PiecewiseFn::constant(1.0);
  CHECK(ae_equal(swap_blocks(c, J, 0.5), c, 1e-15));
}

TEST_CASE("swap_blocks translates atoms and rejects bad blocks") {
  const PiecewiseFn f = PiecewiseFn::constant(0.0).with_atom(0.1, 1.0).with_atom(0.4, 2.0);
  const PiecewiseFn swapped = swap_blocks(f, {0.0, 0.25}, 0.5);
  CHECK(swapped(0.6) == 1.0);  // 0.1 moved into the translated block
  CHECK(swapped(0.1) == 0.0);
  CHECK(swapped(0.4) == 2.0);  // untouched atom

  CHECK_THROWS_AS(swap_blocks(f, {0.0, 0.3}, 0.2), std::invalid_argument);   // overlap
  CHECK_THROWS_AS(swap_blocks(f, {0.8, 0.95}, 0.2), std::invalid_argument);  // leaves [0,1]
  CHECK_THROWS_AS(swap_blocks(f, {0.5, 0.4}, 0.2), std::invalid_argument);   // degenerate
}

TEST_CASE("swap_blocks accepts negative shifts") {
  const PiecewiseFn f = PiecewiseFn::from_poly(Polynomial({0.0, 1.0}));
  const PiecewiseFn swapped = swap_blocks(f, {0.5, 0.75}, -0.5);
  CHECK_NEAR(swapped(0.6), 0.1, 1e-14);
  CHECK_NEAR(swapped(0.1), 0.6, 1e-14);
  CHECK(ae_equal(swap_blocks(swapped, {0.5, 0.75}, -0.5), f, 1e-12));
}

TEST_CASE("indicator of an interval union") {
  const PiecewiseFn ind = PiecewiseFn::indicator({{0.1, 0.2}, {0.5, 0.6}});
  CHECK(ind(0.15) == 1.0);
  CHECK(ind(0.55) == 1.0);
  CHECK(ind(0.2) == 1.0);
  CHECK(ind(0.6) == 1.0);
  CHECK(ind(0.35) == 0.0);
  CHECK(ind(0.7) == 0.0);
  CHECK_NEAR(Measure::lebesgue().integrate(ind), 0.2, 1e-14);
}

TEST_CASE("swap_blocks preserves the Lebesgue integral") {
  Rng rng(31);
  const Measure lambda = Measure::lebesgue();
  for (int k = 0; k < 20; ++k) {
    const PiecewiseFn f = testutil::random_fn(rng);
    const double len = rng.next_in(0.05, 0.3);
    const double a = rng.next_in(0.0, 1.0 - 2.0 * len - 0.02);
    const double s = rng.next_in(len + 0.01, 1.0 - a - len);
    const PiecewiseFn swapped = swap_blocks(f, {a, a + len}, s);
    CHECK_NEAR(lambda.integrate(swapped), lambda.integrate(f), 1e-9);
  }
}

TEST_CASE("indicator of closed intervals") {
  const PiecewiseFn ind = PiecewiseFn::indicator({{0.2, 0.5}});
  CHECK(ind(0.2) == 1.0);
  CHECK(ind(0.35) == 1.0);
  CHECK(ind(0.5) == 1.0);  // right endpoint carried by an atom
  CHECK(ind(0.51) == 0.0);
  CHECK(ind(0.1) == 0.0);

  const PiecewiseFn point = PiecewiseFn::indicator({{0.0, 0.0}});
  CHECK(point(0.0) == 1.0);
  CHECK(point(0.001) == 0.0);

  CHECK(ae_equal(PiecewiseFn::indicator({}), PiecewiseFn::constant(0.0), 0.0));

  const PiecewiseFn full = PiecewiseFn::indicator({{0.0, 1.0}});
  CHECK(full(0.0) == 1.0);
  CHECK(full(1.0) == 1.0);
  CHECK(full(0.5) == 1.0);
}
