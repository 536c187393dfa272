#include "fcagg/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fcagg {

namespace {

bool in_closed(double x, const Interval& iv) { return x >= iv.lo && x <= iv.hi; }

}  // namespace

PiecewiseFn::PiecewiseFn(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                         std::vector<Atom> atoms)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), atoms_(std::move(atoms)) {
  if (breakpoints_.size() < 2) throw std::invalid_argument("PiecewiseFn: need at least two breakpoints");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw std::invalid_argument("PiecewiseFn: breakpoints must start at 0 and end at 1");
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    if (!(breakpoints_[k - 1] < breakpoints_[k]))
      throw std::invalid_argument("PiecewiseFn: breakpoints must be strictly increasing");
  if (pieces_.size() != breakpoints_.size() - 1)
    throw std::invalid_argument("PiecewiseFn: piece count must match intervals");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].point < 0.0 || atoms_[k].point > 1.0)
      throw std::invalid_argument("PiecewiseFn: atom point outside [0,1]");
    if (k > 0 && atoms_[k - 1].point == atoms_[k].point)
      throw std::invalid_argument("PiecewiseFn: atom points must be distinct");
  }
}

PiecewiseFn PiecewiseFn::constant(double c) {
  return PiecewiseFn({0.0, 1.0}, {Polynomial::constant(c)});
}

PiecewiseFn PiecewiseFn::from_poly(Polynomial p) {
  return PiecewiseFn({0.0, 1.0}, {std::move(p)});
}

PiecewiseFn PiecewiseFn::indicator(const IntervalSet& J) {
  std::vector<double> bps{0.0, 1.0};
  for (const Interval& iv : J) {
    if (iv.lo < 0.0 || iv.hi > 1.0 || iv.lo > iv.hi)
      throw std::invalid_argument("indicator: malformed interval");
    bps.push_back(iv.lo);
    bps.push_back(iv.hi);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<Polynomial> pieces;
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    bool inside = false;
    for (const Interval& iv : J)
      if (iv.lo < iv.hi && mid > iv.lo && mid < iv.hi) inside = true;
    pieces.push_back(Polynomial::constant(inside ? 1.0 : 0.0));
  }

  PiecewiseFn f(bps, pieces);
  // right endpoints (and degenerate single points) need atom overrides;
  // left endpoints are covered by their right-open pieces
  for (const Interval& iv : J)
    if (f.piece_value(iv.hi) != 1.0) f = f.with_atom(iv.hi, 1.0);
  return f;
}

const Polynomial& PiecewiseFn::piece_at(double i) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), i);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == 0) idx = 1;
  if (idx > pieces_.size()) idx = pieces_.size();
  return pieces_[idx - 1];
}

double PiecewiseFn::piece_value(double i) const {
  if (i < 0.0 || i > 1.0) throw std::domain_error("PiecewiseFn: argument outside [0,1]");
  return piece_at(i)(i);
}

double PiecewiseFn::operator()(double i) const {
  if (i < 0.0 || i > 1.0) throw std::domain_error("PiecewiseFn: argument outside [0,1]");
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), i,
                             [](const Atom& a, double x) { return a.point < x; });
  if (it != atoms_.end() && it->point == i) return it->value;
  return piece_at(i)(i);
}

PiecewiseFn PiecewiseFn::with_atom(double point, double value) const {
  std::vector<Atom> atoms = atoms_;
  auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.point == point; });
  if (it != atoms.end())
    it->value = value;
  else
    atoms.push_back({point, value});
  return PiecewiseFn(breakpoints_, pieces_, std::move(atoms));
}

PiecewiseFn PiecewiseFn::without_atoms() const { return PiecewiseFn(breakpoints_, pieces_); }

std::vector<double> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g) {
  std::vector<double> bps;
  bps.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(bps));
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

PiecewiseFn linear_combine(double a, const PiecewiseFn& f, double b, const PiecewiseFn& g) {
  std::vector<double> bps = merged_breakpoints(f, g);
  std::vector<Polynomial> pieces;
  pieces.reserve(bps.size() - 1);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    pieces.push_back(a * f.piece_at(mid) + b * g.piece_at(mid));
  }
  std::vector<Atom> atoms;
  for (const Atom& atom : f.atoms()) atoms.push_back({atom.point, a * f(atom.point) + b * g(atom.point)});
  for (const Atom& atom : g.atoms()) {
    bool seen = false;
    for (const Atom& existing : atoms) seen = seen || existing.point == atom.point;
    if (!seen) atoms.push_back({atom.point, a * f(atom.point) + b * g(atom.point)});
  }
  return PiecewiseFn(std::move(bps), std::move(pieces), std::move(atoms));
}

bool ae_equal(const PiecewiseFn& f, const PiecewiseFn& g, double tol) {
  const std::vector<double> bps = merged_breakpoints(f, g);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    const Polynomial diff = f.piece_at(mid) - g.piece_at(mid);
    for (double c : diff.coeffs())
      if (std::abs(c) > tol) return false;
  }
  return true;
}

Bounds ess_bounds(const PiecewiseFn& f) {
  Bounds b{0.0, 0.0};
  bool first = true;
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const Extrema e = extrema_on(f.pieces()[k], bps[k], bps[k + 1]);
    if (first) {
      b = {e.min, e.max};
      first = false;
    } else {
      b.lo = std::min(b.lo, e.min);
      b.hi = std::max(b.hi, e.max);
    }
  }
  return b;
}

bool range_within(const PiecewiseFn& f, double lo, double hi, double tol) {
  const Bounds b = ess_bounds(f);
  if (b.lo < lo - tol || b.hi > hi + tol) return false;
  for (const Atom& atom : f.atoms())
    if (atom.value < lo - tol || atom.value > hi + tol) return false;
  return true;
}

PiecewiseFn swap_blocks(const PiecewiseFn& f, Interval J, double s) {
  const Interval Js{J.lo + s, J.hi + s};
  if (J.lo < 0.0 || J.hi > 1.0 || J.lo >= J.hi)
    throw std::invalid_argument("swap_blocks: J must be a nondegenerate interval in [0,1]");
  if (Js.lo < 0.0 || Js.hi > 1.0)
    throw std::invalid_argument("swap_blocks: translated block leaves [0,1]");
  if (!(Js.lo > J.hi || Js.hi < J.lo)) throw std::invalid_argument("swap_blocks: blocks overlap");

  std::vector<double> bps{0.0, 1.0, J.lo, J.hi, Js.lo, Js.hi};
  for (double b : f.breakpoints()) {
    bps.push_back(b);
    if (in_closed(b, J)) bps.push_back(b + s);
    if (in_closed(b, Js)) bps.push_back(b - s);
  }
  std::erase_if(bps, [](double b) { return b < 0.0 || b > 1.0; });
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<Polynomial> pieces;
  pieces.reserve(bps.size() - 1);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double mid = 0.5 * (bps[k] + bps[k + 1]);
    if (mid > Js.lo && mid < Js.hi)
      pieces.push_back(f.piece_at(mid - s).shifted(-s));
    else if (mid > J.lo && mid < J.hi)
      pieces.push_back(f.piece_at(mid + s).shifted(s));
    else
      pieces.push_back(f.piece_at(mid));
  }

  std::vector<Atom> atoms;
  for (const Atom& atom : f.atoms()) {
    if (in_closed(atom.point, J))
      atoms.push_back({atom.point + s, atom.value});
    else if (in_closed(atom.point, Js))
      atoms.push_back({atom.point - s, atom.value});
    else
      atoms.push_back(atom);
  }
  return PiecewiseFn(std::move(bps), std::move(pieces), std::move(atoms));
}

}  // namespace fcagg
