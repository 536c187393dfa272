#include "fcagg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fcagg {

namespace {
constexpr double kMassTol = 1e-12;
}

Measure::Measure(PiecewiseFn density, std::vector<PointMass> masses)
    : density_(std::move(density)), masses_(std::move(masses)) {
  if (!range_within(density_, 0.0, std::numeric_limits<double>::infinity()))
    throw std::invalid_argument("Measure: density must be nonnegative");
  std::sort(masses_.begin(), masses_.end(),
            [](const PointMass& a, const PointMass& b) { return a.point < b.point; });
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    if (masses_[k].point < 0.0 || masses_[k].point > 1.0)
      throw std::invalid_argument("Measure: mass point outside [0,1]");
    if (masses_[k].mass < 0.0) throw std::invalid_argument("Measure: negative point mass");
    if (k > 0 && masses_[k - 1].point == masses_[k].point)
      throw std::invalid_argument("Measure: mass points must be distinct");
  }
  if (std::abs(total_mass() - 1.0) > kMassTol)
    throw std::invalid_argument("Measure: total mass must be 1");
}

Measure Measure::lebesgue() { return Measure(PiecewiseFn::constant(1.0)); }

Measure Measure::from_density(PiecewiseFn d) { return Measure(std::move(d)); }

Measure Measure::dirac(double point) {
  return Measure(PiecewiseFn::constant(0.0), {{point, 1.0}});
}

double Measure::total_mass() const {
  double total = 0.0;
  const auto& bps = density_.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k)
    total += density_.pieces()[k].integral(bps[k], bps[k + 1]);
  for (const PointMass& pm : masses_) total += pm.mass;
  return total;
}

double Measure::integrate(const PiecewiseFn& f) const {
  double result = 0.0;
  const std::vector<double> bps = merged_breakpoints(f, density_);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    const Polynomial product = f.piece_at(mid) * density_.piece_at(mid);
    result += product.integral(bps[k], bps[k + 1]);
  }
  for (const PointMass& pm : masses_) result += pm.mass * f(pm.point);
  return result;
}

double Measure::cdf(double x) const {
  if (x < 0.0 || x > 1.0) throw std::domain_error("cdf: argument outside [0,1]");
  double result = 0.0;
  const auto& bps = density_.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    if (bps[k] >= x) break;
    result += density_.pieces()[k].integral(bps[k], std::min(bps[k + 1], x));
  }
  for (const PointMass& pm : masses_)
    if (pm.point <= x) result += pm.mass;
  return result;
}

Measure mixture(const Measure& a, const Measure& b, double theta) {
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("mixture: theta outside [0,1]");
  PiecewiseFn density = linear_combine(theta, a.density(), 1.0 - theta, b.density());
  std::vector<PointMass> masses;
  for (const PointMass& pm : a.masses()) masses.push_back({pm.point, theta * pm.mass});
  for (const PointMass& pm : b.masses()) {
    auto it = std::find_if(masses.begin(), masses.end(),
                           [&](const PointMass& existing) { return existing.point == pm.point; });
    if (it != masses.end())
      it->mass += (1.0 - theta) * pm.mass;
    else
      masses.push_back({pm.point, (1.0 - theta) * pm.mass});
  }
  std::erase_if(masses, [](const PointMass& pm) { return pm.mass == 0.0; });
  return Measure(std::move(density), std::move(masses));
}

}  // namespace fcagg
