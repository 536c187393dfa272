#pragma once

#include <vector>

#include "fcagg/piecewise.hpp"

namespace fcagg {

struct PointMass {
  double point;
  double mass;
};

// Probability measure on [0,1]: a nonnegative piecewise-polynomial density
// plus finitely many point masses. Total mass must be 1; construction of a
// non-normalized or negative measure throws (never silently rescaled).
class Measure {
 public:
  Measure(PiecewiseFn density, std::vector<PointMass> masses = {});

  static Measure lebesgue();                    // density 1
  static Measure from_density(PiecewiseFn d);   // no point masses
  static Measure dirac(double point);           // unit mass at a point

  // Integral of f against this measure. The density part integrates the
  // polynomial pieces exactly via antiderivatives and ignores f's atom
  // overrides (null sets); each point mass reads f pointwise, so an atom
  // override at a mass point is respected.
  double integrate(const PiecewiseFn& f) const;

  // mu([0, x]): density antiderivative plus masses at points <= x
  double cdf(double x) const;

  double total_mass() const;

  const PiecewiseFn& density() const { return density_; }
  const std::vector<PointMass>& masses() const { return masses_; }

 private:
  PiecewiseFn density_;
  std::vector<PointMass> masses_;  // sorted by point, points distinct
};

// theta * a + (1 - theta) * b; masses at coinciding points merge.
Measure mixture(const Measure& a, const Measure& b, double theta);

}  // namespace fcagg
