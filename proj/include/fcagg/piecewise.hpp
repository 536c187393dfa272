#pragma once

#include <vector>

#include "fcagg/polynomial.hpp"

namespace fcagg {

// Pointwise override at a single point, a Lebesgue-null deviation from the
// polynomial pieces. Point masses of a measure see these values; integrals
// against densities do not.
struct Atom {
  double point;
  double value;
};

// Closed interval [lo, hi] inside [0,1]. lo == hi is the single point {lo}.
struct Interval {
  double lo;
  double hi;
};

// Disjoint closed intervals, ascending. May be empty.
using IntervalSet = std::vector<Interval>;

// Measurable function [0,1] -> R given by polynomial pieces on
// [b_k, b_{k+1}) (the last piece is closed at 1) plus finitely many atom
// overrides. Piece polynomials are expressed in the global variable i, so
// restriction to a subinterval keeps the coefficients unchanged.
//
// Immutable after construction; all operations below are pure.
class PiecewiseFn {
 public:
  PiecewiseFn(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
              std::vector<Atom> atoms = {});

  static PiecewiseFn constant(double c);
  static PiecewiseFn from_poly(Polynomial p);  // single piece on [0,1]
  // Indicator of a union of closed intervals. Realized as right-open pieces
  // plus a value-1 atom at each right endpoint not covered by a piece, so
  // point masses at interval endpoints are counted.
  static PiecewiseFn indicator(const IntervalSet& J);

  // atom value if i is an atom point, else the containing piece's value
  double operator()(double i) const;
  // the piece value, ignoring atom overrides
  double piece_value(double i) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // piece covering i (right-open lookup, i=1 maps to the last piece)
  const Polynomial& piece_at(double i) const;

  PiecewiseFn with_atom(double point, double value) const;  // replaces an existing atom at point
  PiecewiseFn without_atoms() const;

 private:
  std::vector<double> breakpoints_;  // 0 = b_0 < ... < b_K = 1
  std::vector<Polynomial> pieces_;   // size K
  std::vector<Atom> atoms_;          // sorted by point, points distinct
};

// a*f + b*g on the refined breakpoint grid. The result has an atom at q iff
// f or g does, with value a*f(q) + b*g(q).
PiecewiseFn linear_combine(double a, const PiecewiseFn& f, double b, const PiecewiseFn& g);

// Equality up to a Lebesgue-null set: every coefficient of (f - g) on the
// common breakpoint refinement has magnitude <= tol. Atoms are ignored.
bool ae_equal(const PiecewiseFn& f, const PiecewiseFn& g, double tol);

struct Bounds {
  double lo;
  double hi;
};

// Essential bounds: piece extrema only, atom values excluded.
Bounds ess_bounds(const PiecewiseFn& f);

// True iff every piece's range over its interval and every atom value lies
// in [lo - tol, hi + tol].
bool range_within(const PiecewiseFn& f, double lo, double hi, double tol = 1e-9);

// Exchange the blocks J and J+s: result equals f(i-s) on J+s, f(i+s) on J,
// f elsewhere. Pieces are re-expanded in the shifted variable; atoms inside
// either block are translated. J and J+s must both lie in [0,1] and be
// disjoint.
PiecewiseFn swap_blocks(const PiecewiseFn& f, Interval J, double s);

// Sorted union of the two breakpoint lists (exact dedupe).
std::vector<double> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g);

}  // namespace fcagg
