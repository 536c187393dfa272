#include "fcagg/classification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fcagg/rng.hpp"

namespace fcagg {

namespace {

constexpr double kDefaultAmplitude = 0.08;

std::vector<double> random_grid(Rng& rng, int pieces) {
  std::vector<double> grid{0.0, 1.0};
  while (static_cast<int>(grid.size()) < pieces + 1) {
    const double x = rng.next_in(0.05, 0.95);
    if (std::find(grid.begin(), grid.end(), x) == grid.end()) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

// random quadratic on [lo,hi] with sup-norm scaled to exactly `sup`
Polynomial random_quadratic_with_sup(Rng& rng, double lo, double hi, double sup) {
  if (sup == 0.0) return Polynomial{};
  const Polynomial raw({rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)});
  const Extrema e = extrema_on(raw, lo, hi);
  const double peak = std::max(std::abs(e.min), std::abs(e.max));
  if (peak < 1e-12) return Polynomial::constant(sup);
  return (sup / peak) * raw;
}

PiecewiseFn random_bounded_fn(Rng& rng, const std::vector<double>& grid, double sup) {
  std::vector<Polynomial> pieces;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double target = sup * rng.next_in(0.3, 1.0);
    pieces.push_back(random_quadratic_with_sup(rng, grid[k], grid[k + 1], target));
  }
  return PiecewiseFn(grid, std::move(pieces));
}

PiecewiseFn base_plus(double base, const PiecewiseFn& g, double sign) {
  return linear_combine(1.0, PiecewiseFn::constant(base), sign, g);
}

PiecewiseFn vertex_entry(int type, int which) { return PiecewiseFn::constant(type == which ? 1.0 : 0.0); }

std::vector<PiecewiseFn> vertex_row(int p, int which) {
  std::vector<PiecewiseFn> row;
  row.reserve(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) row.push_back(vertex_entry(t, which));
  return row;
}

PiecewiseFn sum_entries(const Profile& c, bool by_row, int fixed) {
  PiecewiseFn acc = PiecewiseFn::constant(0.0);
  const int n = by_row ? c.p() : c.m();
  for (int k = 0; k < n; ++k) {
    const PiecewiseFn& e = by_row ? c.entry(fixed, k) : c.entry(k, fixed);
    acc = linear_combine(1.0, acc, 1.0, e);
  }
  return acc;
}

double locate_extreme(const Polynomial& p, double lo, double hi, bool want_max) {
  double best_x = lo;
  double best = p(lo);
  constexpr int kSamples = 512;
  for (int k = 1; k <= kSamples; ++k) {
    const double x = lo + (hi - lo) * k / kSamples;
    const double v = p(x);
    if ((want_max && v > best) || (!want_max && v < best)) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

ClassPointCheck validate_class_point(const ClassPoint& c, double tol) {
  if (c.m < 2 || c.p < 2 || c.p > c.m) return {false, "shape: need m >= 2 and 2 <= p <= m"};
  if (static_cast<int>(c.values.size()) != c.m) return {false, "shape: row count mismatch"};
  for (int j = 0; j < c.m; ++j) {
    if (static_cast<int>(c.values[static_cast<std::size_t>(j)].size()) != c.p)
      return {false, "shape: column count mismatch"};
    double row = 0.0;
    for (int t = 0; t < c.p; ++t) {
      const double v = c.at(j, t);
      if (v < -tol || v > 1.0 + tol)
        return {false, "entry (" + std::to_string(j) + "," + std::to_string(t) + ") outside [0,1]"};
      row += v;
    }
    if (std::abs(row - 1.0) > tol)
      return {false, "row " + std::to_string(j) + " sums to " + std::to_string(row)};
  }
  for (int t = 0; t < c.p; ++t) {
    double col = 0.0;
    for (int j = 0; j < c.m; ++j) col += c.at(j, t);
    if (col < 1.0 - tol)
      return {false, "column " + std::to_string(t) + " sums to " + std::to_string(col)};
  }
  return {};
}

Profile::Profile(int m, int p, std::vector<std::vector<PiecewiseFn>> entries)
    : m_(m), p_(p), entries_(std::move(entries)) {
  if (m_ < 2 || p_ < 2 || p_ > m_) throw std::invalid_argument("Profile: need m >= 2 and 2 <= p <= m");
  if (static_cast<int>(entries_.size()) != m_) throw std::invalid_argument("Profile: row count mismatch");
  for (const auto& row : entries_)
    if (static_cast<int>(row.size()) != p_) throw std::invalid_argument("Profile: column count mismatch");
}

const PiecewiseFn& Profile::entry(int object, int type) const {
  if (object < 0 || object >= m_ || type < 0 || type >= p_)
    throw std::out_of_range("Profile: entry index out of range");
  return entries_[static_cast<std::size_t>(object)][static_cast<std::size_t>(type)];
}

Profile Profile::with_entry(int object, int type, PiecewiseFn fn) const {
  std::vector<std::vector<PiecewiseFn>> entries = entries_;
  entries.at(static_cast<std::size_t>(object)).at(static_cast<std::size_t>(type)) = std::move(fn);
  return Profile(m_, p_, std::move(entries));
}

ClassPoint Profile::at(double i) const {
  ClassPoint c;
  c.m = m_;
  c.p = p_;
  c.values.resize(static_cast<std::size_t>(m_));
  for (int j = 0; j < m_; ++j) {
    auto& row = c.values[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(p_));
    for (int t = 0; t < p_; ++t) row[static_cast<std::size_t>(t)] = entry(j, t)(i);
  }
  return c;
}

ProfileReport validate_profile(const Profile& c, double tol) {
  auto fail = [](std::string constraint, int object, int type, double location,
                 double observed) -> ProfileReport {
    return {false, ProfileViolation{std::move(constraint), object, type, location, observed}};
  };

  // entry ranges
  for (int j = 0; j < c.m(); ++j) {
    for (int t = 0; t < c.p(); ++t) {
      const PiecewiseFn& f = c.entry(j, t);
      for (const Atom& atom : f.atoms())
        if (atom.value < -tol || atom.value > 1.0 + tol)
          return fail("entry_range", j, t, atom.point, atom.value);
      const auto& bps = f.breakpoints();
      for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const Extrema e = extrema_on(f.pieces()[k], bps[k], bps[k + 1]);
        if (e.min < -tol) {
          const double x = locate_extreme(f.pieces()[k], bps[k], bps[k + 1], false);
          return fail("entry_range", j, t, x, f.pieces()[k](x));
        }
        if (e.max > 1.0 + tol) {
          const double x = locate_extreme(f.pieces()[k], bps[k], bps[k + 1], true);
          return fail("entry_range", j, t, x, f.pieces()[k](x));
        }
      }
    }
  }

  // row sums identically 1, including at atom points
  for (int j = 0; j < c.m(); ++j) {
    const PiecewiseFn sum = sum_entries(c, true, j);
    const auto& bps = sum.breakpoints();
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
      const Polynomial diff = sum.pieces()[k] - Polynomial::constant(1.0);
      for (double coeff : diff.coeffs())
        if (std::abs(coeff) > tol) {
          const double mid = 0.5 * (bps[k] + bps[k + 1]);
          return fail("row_sum", j, -1, mid, sum.pieces()[k](mid));
        }
    }
    for (const Atom& atom : sum.atoms())
      if (std::abs(atom.value - 1.0) > tol) return fail("row_sum", j, -1, atom.point, atom.value);
  }

  // column sums >= 1 everywhere; for m == p they are forced to be exactly 1
  for (int t = 0; t < c.p(); ++t) {
    const PiecewiseFn sum = sum_entries(c, false, t);
    const auto& bps = sum.breakpoints();
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
      if (c.m() == c.p()) {
        const Polynomial diff = sum.pieces()[k] - Polynomial::constant(1.0);
        for (double coeff : diff.coeffs())
          if (std::abs(coeff) > tol) {
            const double mid = 0.5 * (bps[k] + bps[k + 1]);
            return fail("column_sum", -1, t, mid, sum.pieces()[k](mid));
          }
      } else {
        const Extrema e = extrema_on(sum.pieces()[k], bps[k], bps[k + 1]);
        if (e.min < 1.0 - tol) {
          const double x = locate_extreme(sum.pieces()[k], bps[k], bps[k + 1], false);
          return fail("column_sum", -1, t, x, sum.pieces()[k](x));
        }
      }
    }
    for (const Atom& atom : sum.atoms()) {
      const bool bad = c.m() == c.p() ? std::abs(atom.value - 1.0) > tol : atom.value < 1.0 - tol;
      if (bad) return fail("column_sum", -1, t, atom.point, atom.value);
    }
  }

  return {};
}

Profile example1_profile() {
  std::vector<std::vector<PiecewiseFn>> entries;
  entries.push_back({PiecewiseFn::from_poly(Polynomial({0.0, 2.0 / 3.0})),
                     PiecewiseFn::constant(1.0 / 3.0),
                     PiecewiseFn::from_poly(Polynomial({2.0 / 3.0, -2.0 / 3.0}))});
  entries.push_back({PiecewiseFn::from_poly(Polynomial({1.0, -3.0, 3.0, -1.0})),
                     PiecewiseFn::from_poly(Polynomial({0.0, 3.0, -3.0})),
                     PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 0.0, 1.0}))});
  entries.push_back({PiecewiseFn::constant(0.0).with_atom(0.0, 1.0),
                     PiecewiseFn::constant(1.0).with_atom(0.0, 0.0).with_atom(1.0, 0.0),
                     PiecewiseFn::constant(0.0).with_atom(1.0, 1.0)});
  entries.push_back(vertex_row(3, 0));
  entries.push_back(vertex_row(3, 1));
  entries.push_back(vertex_row(3, 2));
  return Profile(6, 3, std::move(entries));
}

Profile indicator_probe_profile(int m, int p, int contrast_type, const IntervalSet& J) {
  if (p < 2 || m < p) throw std::invalid_argument("indicator_probe_profile: need m >= p >= 2");
  if (contrast_type < 1 || contrast_type >= p)
    throw std::invalid_argument("indicator_probe_profile: contrast type must differ from the anchor type 0");

  const PiecewiseFn ind = PiecewiseFn::indicator(J);
  const PiecewiseFn comp = linear_combine(1.0, PiecewiseFn::constant(1.0), -1.0, ind);

  std::vector<std::vector<PiecewiseFn>> entries;
  std::vector<PiecewiseFn> first;
  for (int t = 0; t < p; ++t) {
    if (t == contrast_type)
      first.push_back(ind);
    else if (t == 0)
      first.push_back(comp);
    else
      first.push_back(PiecewiseFn::constant(0.0));
  }
  entries.push_back(std::move(first));

  if (m > p) {
    for (int j = 1; j <= p; ++j) entries.push_back(vertex_row(p, j - 1));
    for (int j = p + 1; j < m; ++j) entries.push_back(vertex_row(p, 0));
  } else {
    // m == p: object 1 carries the complementary swap, the rest cover the
    // remaining types so every column sum is identically 1
    std::vector<PiecewiseFn> second;
    for (int t = 0; t < p; ++t) {
      if (t == 0)
        second.push_back(ind);
      else if (t == contrast_type)
        second.push_back(comp);
      else
        second.push_back(PiecewiseFn::constant(0.0));
    }
    entries.push_back(std::move(second));
    std::vector<int> remaining;
    for (int t = 0; t < p; ++t)
      if (t != 0 && t != contrast_type) remaining.push_back(t);
    for (int t : remaining) entries.push_back(vertex_row(p, t));
  }
  return Profile(m, p, std::move(entries));
}

Profile random_profile(std::uint64_t seed, int m, int p, int pieces, double amplitude) {
  if (m < 2 || p < 2 || p > m) throw std::invalid_argument("random_profile: need m >= p >= 2");
  if (pieces < 1) throw std::invalid_argument("random_profile: need at least one piece");
  if (amplitude < 0.0) throw std::invalid_argument("random_profile: negative amplitude");

  Rng rng(seed);
  const std::vector<double> grid = random_grid(rng, pieces);
  const double base = 1.0 / p;

  double cap = 0.45 / p;
  if (m > p) cap = std::min(cap, 0.9 * (m - p) / (static_cast<double>(p) * m));
  const double amp = std::min(amplitude, cap);

  std::vector<std::vector<PiecewiseFn>> entries(
      static_cast<std::size_t>(m),
      std::vector<PiecewiseFn>(static_cast<std::size_t>(p), PiecewiseFn::constant(base)));

  if (m > p) {
    // one row-local move per row; column slack absorbs the drift
    for (int j = 0; j < m; ++j) {
      const int ta = rng.next_index(p);
      int tb = rng.next_index(p - 1);
      if (tb >= ta) ++tb;
      const PiecewiseFn g = random_bounded_fn(rng, grid, amp);
      entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(ta)] = base_plus(base, g, +1.0);
      entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(tb)] = base_plus(base, g, -1.0);
    }
  } else {
    // m == p: rectangle moves keep every column sum identically 1
    for (int j = 0; j + 1 < m; j += 2) {
      const int ta = rng.next_index(p);
      int tb = rng.next_index(p - 1);
      if (tb >= ta) ++tb;
      const PiecewiseFn g = random_bounded_fn(rng, grid, amp);
      entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(ta)] = base_plus(base, g, +1.0);
      entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(tb)] = base_plus(base, g, -1.0);
      entries[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(ta)] = base_plus(base, g, -1.0);
      entries[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(tb)] = base_plus(base, g, +1.0);
    }
  }
  return Profile(m, p, std::move(entries));
}

Profile constant_column_profile(std::uint64_t seed, int m, int p, int type, double column_sum) {
  if (m < 2 || p < 2 || p > m) throw std::invalid_argument("constant_column_profile: need m >= p >= 2");
  if (type < 0 || type >= p) throw std::invalid_argument("constant_column_profile: type out of range");
  if (column_sum < 1.0 - 1e-12 || column_sum > m - p + 1.0 + 1e-12)
    throw std::invalid_argument("constant_column_profile: column sum infeasible, need 1 <= h <= m-p+1");

  Rng rng(seed);
  const std::vector<double> grid = random_grid(rng, 3);
  const double base_t = column_sum / m;
  const double base_other = (1.0 - base_t) / (p - 1);
  const int partner = (type + 1) % p;

  double margin = std::min({base_t, 1.0 - base_t, base_other, 1.0 - base_other});
  const double amp = 0.9 * margin / std::max(1, m - 1);

  // perturbations summing identically to zero: the last one cancels the rest
  std::vector<PiecewiseFn> gs;
  PiecewiseFn total = PiecewiseFn::constant(0.0);
  for (int j = 0; j + 1 < m; ++j) {
    gs.push_back(random_bounded_fn(rng, grid, amp));
    total = linear_combine(1.0, total, 1.0, gs.back());
  }
  gs.push_back(linear_combine(-1.0, total, 0.0, PiecewiseFn::constant(0.0)));

  std::vector<std::vector<PiecewiseFn>> entries;
  for (int j = 0; j < m; ++j) {
    std::vector<PiecewiseFn> row;
    for (int t = 0; t < p; ++t) {
      if (t == type)
        row.push_back(linear_combine(1.0, PiecewiseFn::constant(base_t), 1.0, gs[static_cast<std::size_t>(j)]));
      else if (t == partner)
        row.push_back(linear_combine(1.0, PiecewiseFn::constant(base_other), -1.0, gs[static_cast<std::size_t>(j)]));
      else
        row.push_back(PiecewiseFn::constant(base_other));
    }
    entries.push_back(std::move(row));
  }
  return Profile(m, p, std::move(entries));
}

namespace {

double lebesgue_integral(const PiecewiseFn& f) {
  double total = 0.0;
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k)
    total += f.pieces()[k].integral(bps[k], bps[k + 1]);
  return total;
}

double column_sum_at(const Profile& c, int type, double i) {
  double total = 0.0;
  for (int j = 0; j < c.m(); ++j) total += c.entry(j, type)(i);
  return total;
}

Profile add_constant_move(const Profile& c, int object, int ta, int tb, double delta) {
  Profile out = c.with_entry(
      object, ta, linear_combine(1.0, c.entry(object, ta), 1.0, PiecewiseFn::constant(delta)));
  return out.with_entry(
      object, tb, linear_combine(1.0, out.entry(object, tb), 1.0, PiecewiseFn::constant(-delta)));
}

}  // namespace

std::pair<Profile, Profile> agreeing_pair(std::uint64_t seed, int m, int p, int object) {
  if (m < 2 || p < 2 || p > m) throw std::invalid_argument("agreeing_pair: need m >= p >= 2");
  if (object < 0 || object >= m) throw std::invalid_argument("agreeing_pair: object out of range");
  Rng rng(seed);
  Profile a = random_profile(rng.fork(1).next_u64(), m, p, 3, kDefaultAmplitude);
  Profile b = a;

  const double base = 1.0 / p;
  double cap = 0.45 / p;
  if (m > p) cap = std::min(cap, 0.9 * (m - p) / (static_cast<double>(p) * m));
  const double amp_a = std::min(kDefaultAmplitude, cap);
  const double gap = lebesgue_integral(a.entry(0, 0)) - lebesgue_integral(a.entry(1, 0));
  const double flip_sign = gap >= 0.0 ? 1.0 : -1.0;

  int tb = p == 2 ? 1 : 1 + rng.next_index(p - 1);

  if (m > p) {
    const double col_margin = static_cast<double>(m - p) / p - m * amp_a;
    const double cap_move =
        0.9 * std::min({base - amp_a, 1.0 - base - amp_a, std::max(col_margin, 0.0)});
    if (object <= 1 && m >= 3) {
      // the differing row avoids the first two objects; a plain bounded move
      const double amp_move = std::min(0.05, cap_move);
      const PiecewiseFn g = random_bounded_fn(rng, random_grid(rng, 2), std::max(amp_move, 1e-3));
      b = b.with_entry(2, 0, linear_combine(1.0, b.entry(2, 0), 1.0, g));
      b = b.with_entry(2, tb, linear_combine(1.0, b.entry(2, tb), -1.0, g));
    } else {
      // flip the ordering of the first two objects' type-0 integrals
      const int d = rng.next_index(2);
      double want = d == 0 ? -gap - flip_sign * 0.05 : gap + flip_sign * 0.05;
      want = std::clamp(want, -cap_move, cap_move);
      if (std::abs(want) < 0.01) want = want >= 0.0 ? 0.01 : -0.01;
      b = add_constant_move(b, d, 0, tb, want);
    }
  } else if (m >= 3) {
    // m == p: rectangle moves keep the columns identically 1
    const double cap_move = 0.9 * (base - amp_a);
    int r1 = 0, r2 = 1;
    double want = -gap - flip_sign * 0.05;  // applied to row r1 entry 0
    if (object == 0) {
      r1 = 1;
      r2 = 2;
      want = gap + flip_sign * 0.05;
    } else if (object == 1) {
      r1 = 0;
      r2 = 2;
    } else {
      want = 0.5 * (-gap - flip_sign * 0.05);  // both rows move, gap shifts by 2c
    }
    want = std::clamp(want, -cap_move, cap_move);
    if (std::abs(want) < 0.01) want = want >= 0.0 ? 0.01 : -0.01;
    b = add_constant_move(b, r1, 0, tb, want);
    b = add_constant_move(b, r2, 0, tb, -want);
  }
  // m == p == 2 admits no positive-measure difference: the two constraints
  // pin the whole profile to its first entry function

  const bool force_atoms = m == 2 && p == 2;
  if (force_atoms || rng.next_below(2) == 0) {
    // a.e.-only deviation on the designated row
    const double q = rng.next_in(0.05, 0.95);
    const int ta = tb == 0 ? 1 : 0;
    const double va = b.entry(object, ta)(q);
    const double vb = b.entry(object, tb)(q);
    if (m > p) {
      const double col_slack = column_sum_at(b, tb, q) - 1.0;
      const double delta = 0.5 * std::min({1.0 - va, vb, col_slack});
      if (delta > 1e-6) {
        b = b.with_entry(object, ta, b.entry(object, ta).with_atom(q, va + delta));
        b = b.with_entry(object, tb, b.entry(object, tb).with_atom(q, vb - delta));
      }
    } else {
      const int other = (object + 1) % m;
      const double wa = b.entry(other, ta)(q);
      const double wb = b.entry(other, tb)(q);
      const double delta = 0.5 * std::min({1.0 - va, vb, wa, 1.0 - wb});
      if (delta > 1e-6) {
        b = b.with_entry(object, ta, b.entry(object, ta).with_atom(q, va + delta));
        b = b.with_entry(object, tb, b.entry(object, tb).with_atom(q, vb - delta));
        b = b.with_entry(other, ta, b.entry(other, ta).with_atom(q, wa - delta));
        b = b.with_entry(other, tb, b.entry(other, tb).with_atom(q, wb + delta));
      }
    }
  }
  return {a, b};
}

}  // namespace fcagg
