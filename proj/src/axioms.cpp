#include "fcagg/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "fcagg/rng.hpp"

namespace fcagg {

namespace {

Shape effective_shape(const Fcaf& alpha, const CheckConfig& cfg) {
  return alpha.required_shape.value_or(cfg.shape);
}

double row_diff(const ClassPoint& a, int ja, const ClassPoint& b, int jb) {
  double d = 0.0;
  for (int t = 0; t < a.p; ++t) d = std::max(d, std::abs(a.at(ja, t) - b.at(jb, t)));
  return d;
}

double full_diff(const ClassPoint& a, const ClassPoint& b) {
  double d = 0.0;
  for (int j = 0; j < a.m; ++j) d = std::max(d, row_diff(a, j, b, j));
  return d;
}

std::vector<double> uniform_cells(int n) {
  std::vector<double> bps(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) bps[static_cast<std::size_t>(k)] = static_cast<double>(k) / n;
  bps.front() = 0.0;
  bps.back() = 1.0;
  return bps;
}

PiecewiseFn step_fn(const std::vector<double>& bps, const std::vector<double>& values) {
  std::vector<Polynomial> pieces;
  pieces.reserve(values.size());
  for (double v : values) pieces.push_back(Polynomial::constant(v));
  return PiecewiseFn(bps, std::move(pieces));
}

PiecewiseFn shift_by(const PiecewiseFn& f, double c) {
  return linear_combine(1.0, f, 1.0, PiecewiseFn::constant(c));
}

double column_sum_at(const Profile& c, int type, double i) {
  double total = 0.0;
  for (int j = 0; j < c.m(); ++j) total += c.entry(j, type)(i);
  return total;
}

// round-robin vertex completion for the non-designated objects: every type
// gets at least one fully-assigned object, so the column constraints hold
// with slack regardless of the designated row
std::vector<int> vertex_cover_types(int m, int designated, int p, int offset) {
  std::vector<int> types(static_cast<std::size_t>(m), -1);
  int k = 0;
  for (int j = 0; j < m; ++j) {
    if (j == designated) continue;
    types[static_cast<std::size_t>(j)] = (k + offset) % p;
    ++k;
  }
  return types;
}

Profile designated_row_profile(Rng& rng, int m, int p, int designated,
                               const std::vector<double>& designated_row) {
  std::vector<std::vector<PiecewiseFn>> entries(
      static_cast<std::size_t>(m),
      std::vector<PiecewiseFn>(static_cast<std::size_t>(p), PiecewiseFn::constant(0.0)));
  for (int t = 0; t < p; ++t)
    entries[static_cast<std::size_t>(designated)][static_cast<std::size_t>(t)] =
        PiecewiseFn::constant(designated_row[static_cast<std::size_t>(t)]);

  if (m > p) {
    const std::vector<int> cover = vertex_cover_types(m, designated, p, rng.next_index(p));
    for (int j = 0; j < m; ++j) {
      if (j == designated) continue;
      for (int t = 0; t < p; ++t)
        entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
            PiecewiseFn::constant(t == cover[static_cast<std::size_t>(j)] ? 1.0 : 0.0);
    }
  } else {
    // m == p: the remaining mass is spread uniformly so every column sum is
    // identically 1
    for (int j = 0; j < m; ++j) {
      if (j == designated) continue;
      for (int t = 0; t < p; ++t) {
        const double remaining = 1.0 - designated_row[static_cast<std::size_t>(t)];
        entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
            PiecewiseFn::constant(remaining / (m - 1));
      }
    }
  }
  return Profile(m, p, std::move(entries));
}

AxiomReport make_report(std::string axiom, const CheckConfig& cfg, int probes) {
  AxiomReport r;
  r.axiom = std::move(axiom);
  r.probes = probes;
  r.tol = cfg.tol;
  return r;
}

}  // namespace

std::optional<AxiomWitness> optimality_violation(const Fcaf& alpha, const Profile& probe, int type,
                                                 double column_sum, double tol) {
  const ClassPoint out = alpha(probe);
  double sum = 0.0;
  for (int j = 0; j < out.m; ++j) sum += out.at(j, type);
  if (std::abs(sum - column_sum) <= tol) return std::nullopt;
  AxiomWitness w;
  w.profiles = {probe};
  w.type = type;
  w.observed = sum;
  w.expected = column_sum;
  w.deviation = std::abs(sum - column_sum);
  w.note = "constant column sum not preserved";
  return w;
}

AxiomReport check_optimality(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("optimality", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  const double h_max = s.m - s.p + 1.0;
  static const double kLevels[] = {1.0, 0.0, 0.5, 0.25};
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const int t = k % s.p;
    const double u = k < 4 ? kLevels[k] : rng.next_unit();
    const double h = 1.0 + (h_max - 1.0) * u;
    const Profile probe = constant_column_profile(rng.next_u64(), s.m, s.p, t, h);
    if (auto w = optimality_violation(alpha, probe, t, h, cfg.tol)) {
      w->note += " (h=" + std::to_string(h) + ", probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

AxiomReport check_independence(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("independence", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const int j = k % s.m;
    const auto [a, b] = agreeing_pair(rng.next_u64(), s.m, s.p, j);
    const ClassPoint out_a = alpha(a);
    const ClassPoint out_b = alpha(b);
    const double d = row_diff(out_a, j, out_b, j);
    if (d > cfg.tol) {
      AxiomWitness w;
      w.profiles = {a, b};
      w.object = j;
      w.deviation = d;
      w.note = "outputs differ on an object whose rows agree a.e. (probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

AxiomReport check_symmetry(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("symmetry", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const Profile a = random_profile(rng.next_u64(), s.m, s.p, 3, 0.08);

    std::vector<int> perm(static_cast<std::size_t>(s.m));
    std::iota(perm.begin(), perm.end(), 0);
    if (k % 2 == 0) {
      const int j1 = rng.next_index(s.m);
      int j2 = rng.next_index(s.m - 1);
      if (j2 >= j1) ++j2;
      std::swap(perm[static_cast<std::size_t>(j1)], perm[static_cast<std::size_t>(j2)]);
    } else {
      for (int j = s.m - 1; j > 0; --j)
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(rng.next_index(j + 1))]);
    }

    std::vector<std::vector<PiecewiseFn>> rows(static_cast<std::size_t>(s.m));
    for (int j = 0; j < s.m; ++j) {
      std::vector<PiecewiseFn> row;
      for (int t = 0; t < s.p; ++t) row.push_back(a.entry(j, t));
      rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = std::move(row);
    }
    const Profile b(s.m, s.p, std::move(rows));

    const ClassPoint out_a = alpha(a);
    const ClassPoint out_b = alpha(b);
    for (int j = 0; j < s.m; ++j) {
      const int pj = perm[static_cast<std::size_t>(j)];
      const double d = row_diff(out_a, j, out_b, pj);
      if (d > cfg.tol) {
        AxiomWitness w;
        w.profiles = {a, b};
        w.object = j;
        w.object2 = pj;
        w.deviation = d;
        w.note = "relabeling objects changed an output row (probe " + std::to_string(k) + ")";
        report.pass = false;
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_zero_unanimity(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("zero_unanimity", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const int x = k % s.m;
    const int t = rng.next_index(s.p);
    int vertex = rng.next_index(s.p - 1);
    if (vertex >= t) ++vertex;

    // everyone fully rejects type t for object x by assigning it to another
    // type; this is the zero-entry family the uniqueness proofs probe
    std::vector<double> row(static_cast<std::size_t>(s.p), 0.0);
    row[static_cast<std::size_t>(vertex)] = 1.0;
    Profile probe = designated_row_profile(rng, s.m, s.p, x, row);

    if (k % 2 == 1) {
      // a.e.-only deviation: the designated entry may carry an interior atom
      const double q = rng.next_in(0.05, 0.95);
      const double d = 0.4;
      if (s.m > s.p) {
        const double slack = column_sum_at(probe, vertex, q) - 1.0;
        const double delta = std::min(d, 0.5 * slack);
        if (delta > 1e-6) {
          probe = probe.with_entry(x, t, probe.entry(x, t).with_atom(q, delta));
          probe = probe.with_entry(x, vertex, probe.entry(x, vertex).with_atom(q, 1.0 - delta));
        }
      } else {
        const int other = (x + 1) % s.m;
        const double wa = probe.entry(other, t)(q);
        const double wb = probe.entry(other, vertex)(q);
        const double delta = std::min({d, wa, 1.0 - wb});
        if (delta > 1e-6) {
          probe = probe.with_entry(x, t, probe.entry(x, t).with_atom(q, delta));
          probe = probe.with_entry(x, vertex, probe.entry(x, vertex).with_atom(q, 1.0 - delta));
          probe = probe.with_entry(other, t, probe.entry(other, t).with_atom(q, wa - delta));
          probe = probe.with_entry(other, vertex, probe.entry(other, vertex).with_atom(q, wb + delta));
        }
      }
    }

    const double out = alpha(probe).at(x, t);
    if (out > cfg.tol) {
      AxiomWitness w;
      w.profiles = {probe};
      w.object = x;
      w.type = t;
      w.observed = out;
      w.expected = 0.0;
      w.deviation = out;
      w.note = "a.e.-zero entry aggregated to a positive value (probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

AxiomReport check_unanimity(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("unanimity", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  static const double kLevels[] = {0.75, 0.25, 0.0, 1.0, 0.5};
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const int x = k % s.m;
    const int t = rng.next_index(s.p);
    const double h = k < 5 ? kLevels[k] : rng.next_unit();

    std::vector<double> row(static_cast<std::size_t>(s.p), (1.0 - h) / (s.p - 1));
    row[static_cast<std::size_t>(t)] = h;
    const Profile probe = designated_row_profile(rng, s.m, s.p, x, row);

    const double out = alpha(probe).at(x, t);
    if (std::abs(out - h) > cfg.tol) {
      AxiomWitness w;
      w.profiles = {probe};
      w.object = x;
      w.type = t;
      w.observed = out;
      w.expected = h;
      w.deviation = std::abs(out - h);
      w.note = "constant entry not preserved (h=" + std::to_string(h) + ", probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

std::optional<AxiomWitness> coherence_violation(const Fcaf& alpha, const Profile& probe, double tol) {
  const ClassPoint out = alpha(probe);
  for (int j = 0; j < probe.m(); ++j)
    for (int t = 0; t < probe.p(); ++t) {
      const Bounds b = ess_bounds(probe.entry(j, t));
      const double v = out.at(j, t);
      if (v < b.lo - tol || v > b.hi + tol) {
        AxiomWitness w;
        w.profiles = {probe};
        w.object = j;
        w.type = t;
        w.observed = v;
        w.deviation = std::max(b.lo - v, v - b.hi);
        w.note = "output outside essential bounds [" + std::to_string(b.lo) + ", " +
                 std::to_string(b.hi) + "]";
        return w;
      }
    }
  return std::nullopt;
}

AxiomReport check_coherence(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("coherence", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    // mixed base: convex combination of a vertex assignment and the uniform
    // matrix, so entry ranges vary probe to probe and sit away from 1/p
    const double beta = rng.next_in(0.15, 0.85);
    std::vector<std::vector<PiecewiseFn>> entries;
    for (int j = 0; j < s.m; ++j) {
      const int tau = (j + k) % s.p;
      std::vector<PiecewiseFn> row;
      for (int t = 0; t < s.p; ++t)
        row.push_back(PiecewiseFn::constant((t == tau ? (1.0 - beta) : 0.0) + beta / s.p));
      entries.push_back(std::move(row));
    }
    Profile probe(s.m, s.p, std::move(entries));

    // small row-local or rectangle perturbations on top of the base
    const double amp =
        s.m > s.p ? 0.45 * beta * (s.m - s.p) / (static_cast<double>(s.p) * s.m) : 0.2 * beta / s.p;
    for (int j = 0; j + (s.m == s.p ? 1 : 0) < s.m; j += (s.m == s.p ? 2 : 1)) {
      const int ta = rng.next_index(s.p);
      int tb = rng.next_index(s.p - 1);
      if (tb >= ta) ++tb;
      std::vector<double> grid{0.0, rng.next_in(0.3, 0.7), 1.0};
      std::vector<Polynomial> gp;
      for (std::size_t q = 0; q + 1 < grid.size(); ++q) {
        const Polynomial raw({rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)});
        const Extrema e = extrema_on(raw, grid[q], grid[q + 1]);
        const double peak = std::max(std::abs(e.min), std::abs(e.max));
        const double va = probe.entry(j, ta)(0.5), vb = probe.entry(j, tb)(0.5);
        const double cap = std::min({amp, va, 1.0 - va, vb, 1.0 - vb});
        gp.push_back(peak < 1e-12 || cap <= 0.0 ? Polynomial{} : (cap / peak) * raw);
      }
      const PiecewiseFn g(grid, std::move(gp));
      probe = probe.with_entry(j, ta, linear_combine(1.0, probe.entry(j, ta), 1.0, g));
      probe = probe.with_entry(j, tb, linear_combine(1.0, probe.entry(j, tb), -1.0, g));
      if (s.m == s.p) {
        probe = probe.with_entry(j + 1, ta, linear_combine(1.0, probe.entry(j + 1, ta), -1.0, g));
        probe = probe.with_entry(j + 1, tb, linear_combine(1.0, probe.entry(j + 1, tb), 1.0, g));
      }
    }

    if (auto w = coherence_violation(alpha, probe, cfg.tol)) {
      w->note += " (probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

AxiomReport check_non_dictatorship(const Fcaf& alpha, const CheckConfig& cfg) {
  constexpr int kProbes = 8;
  AxiomReport report = make_report("non_dictatorship", cfg, kProbes);
  report.grid_n = cfg.grid_n;
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  const std::vector<double> cells = uniform_cells(cfg.grid_n);

  std::vector<Profile> probes;
  std::vector<ClassPoint> outputs;
  for (int r = 0; r < kProbes; ++r) {
    Rng rng = root.fork(1000 + static_cast<std::uint64_t>(r));
    const double base = 1.0 / s.p;
    std::vector<std::vector<PiecewiseFn>> entries(
        static_cast<std::size_t>(s.m),
        std::vector<PiecewiseFn>(static_cast<std::size_t>(s.p), PiecewiseFn::constant(base)));

    // a step function with a distinct generic constant on every grid cell
    const double amp = 0.9 * std::min(base, s.m > s.p ? (s.m - s.p) / static_cast<double>(s.p) : base);
    std::vector<double> values(static_cast<std::size_t>(cfg.grid_n));
    for (double& v : values) v = amp * (2.0 * rng.next_unit() - 1.0);
    const PiecewiseFn d = step_fn(cells, values);

    const int obj = r % s.m;
    const int ta = r % s.p;
    const int tb = (ta + 1) % s.p;
    entries[static_cast<std::size_t>(obj)][static_cast<std::size_t>(ta)] = shift_by(d, base);
    entries[static_cast<std::size_t>(obj)][static_cast<std::size_t>(tb)] =
        linear_combine(1.0, PiecewiseFn::constant(base), -1.0, d);
    if (s.m == s.p) {
      const int partner = (obj + 1) % s.m;
      entries[static_cast<std::size_t>(partner)][static_cast<std::size_t>(ta)] =
          linear_combine(1.0, PiecewiseFn::constant(base), -1.0, d);
      entries[static_cast<std::size_t>(partner)][static_cast<std::size_t>(tb)] = shift_by(d, base);
    }

    // alternate the ordering of the first two objects' type-0 means so
    // partition-style aggregators are probed on both sides
    if (s.m > s.p && obj > 1) {
      const double tilt = (r % 2 == 0) ? 0.05 : -0.05;
      auto tweak = [&](int j, double delta) {
        entries[static_cast<std::size_t>(j)][0] =
            shift_by(entries[static_cast<std::size_t>(j)][0], delta);
        entries[static_cast<std::size_t>(j)][1] =
            shift_by(entries[static_cast<std::size_t>(j)][1], -delta);
      };
      tweak(0, tilt);
      tweak(1, -tilt);
    }

    Profile probe(s.m, s.p, std::move(entries));
    probes.push_back(probe);
    outputs.push_back(alpha(probe));
  }

  for (int c = 0; c < cfg.grid_n; ++c) {
    const double mid = (c + 0.5) / cfg.grid_n;
    bool survives = true;
    for (int r = 0; r < kProbes && survives; ++r) {
      for (int j = 0; j < s.m && survives; ++j)
        for (int t = 0; t < s.p; ++t)
          if (std::abs(outputs[static_cast<std::size_t>(r)].at(j, t) -
                       probes[static_cast<std::size_t>(r)].entry(j, t)(mid)) > cfg.tol) {
            survives = false;
            break;
          }
    }
    if (survives) {
      AxiomWitness w;
      w.profiles = probes;
      w.location = mid;
      w.deviation = 1.0;
      w.note = "output matches the classification of grid cell " + std::to_string(c) +
               " on every separating probe (grid_n=" + std::to_string(cfg.grid_n) + ")";
      report.pass = false;
      report.witness = std::move(w);
      return report;
    }
  }
  return report;
}

AxiomReport check_anonymity(const Fcaf& alpha, const CheckConfig& cfg) {
  AxiomReport report = make_report("anonymity", cfg, cfg.probes);
  const Shape s = effective_shape(alpha, cfg);
  const Rng root(cfg.seed);
  for (int k = 0; k < cfg.probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));

    Profile probe = [&] {
      if (k % 3 == 1) {
        // vertex contrast near 0: individuals on [0, 1/4) classify object 0
        // fully into one type, the rest hold a non-vertex row
        const int tau = std::min(1, s.p - 1);
        const PiecewiseFn ind = PiecewiseFn::indicator({{0.0, 0.25}});
        std::vector<std::vector<PiecewiseFn>> entries;
        std::vector<double> w(static_cast<std::size_t>(s.p), 0.0);
        if (s.m > s.p)
          for (int t = 0; t < s.p; ++t) w[static_cast<std::size_t>(t)] = (t == tau ? 0.5 : 0.0) + 0.5 / s.p;
        else {
          w[0] = 0.4;
          w[static_cast<std::size_t>(tau)] = 0.6;
        }
        std::vector<PiecewiseFn> first;
        for (int t = 0; t < s.p; ++t) {
          const double on = t == tau ? 1.0 : 0.0;
          // e_tau on the block, w elsewhere
          first.push_back(linear_combine(on - w[static_cast<std::size_t>(t)], ind, 1.0,
                                         PiecewiseFn::constant(w[static_cast<std::size_t>(t)])));
        }
        entries.push_back(std::move(first));
        if (s.m > s.p) {
          for (int j = 1; j <= s.p; ++j) {
            std::vector<PiecewiseFn> row;
            for (int t = 0; t < s.p; ++t) row.push_back(PiecewiseFn::constant(t == j - 1 ? 1.0 : 0.0));
            entries.push_back(std::move(row));
          }
          for (int j = s.p + 1; j < s.m; ++j) {
            std::vector<PiecewiseFn> row;
            for (int t = 0; t < s.p; ++t) row.push_back(PiecewiseFn::constant(t == 0 ? 1.0 : 0.0));
            entries.push_back(std::move(row));
          }
        } else {
          // complementary second row, then cover the remaining types
          std::vector<PiecewiseFn> second;
          for (int t = 0; t < s.p; ++t) {
            const double on = t == 0 ? 1.0 : 0.0;
            const double off = (t == 0 ? 1.0 : (t == tau ? 1.0 : 0.0)) - w[static_cast<std::size_t>(t)];
            second.push_back(linear_combine(on - off, ind, 1.0, PiecewiseFn::constant(off)));
          }
          entries.push_back(std::move(second));
          for (int t = 0; t < s.p; ++t) {
            if (t == 0 || t == tau) continue;
            std::vector<PiecewiseFn> row;
            for (int tt = 0; tt < s.p; ++tt) row.push_back(PiecewiseFn::constant(tt == t ? 1.0 : 0.0));
            entries.push_back(std::move(row));
          }
        }
        return Profile(s.m, s.p, std::move(entries));
      }
      return random_profile(rng.next_u64(), s.m, s.p, 3, 0.08);
    }();

    Interval J{0.0, 0.25};
    double shift = 0.5;
    switch (k % 5) {
      case 0:
        break;  // block containing 0
      case 1:
        J = {0.3, 0.5};
        shift = 0.5;  // translated block ends at 1
        break;
      case 2:
        J = {0.0, 0.1};
        shift = 0.2;
        break;
      default: {
        const double len = rng.next_in(0.05, 0.3);
        const double a = rng.next_in(0.0, 1.0 - 2.0 * len - 0.05);
        J = {a, a + len};
        shift = rng.next_in(len + 0.01, 1.0 - a - len);
        break;
      }
    }

    std::vector<std::vector<PiecewiseFn>> swapped;
    for (int j = 0; j < s.m; ++j) {
      std::vector<PiecewiseFn> row;
      for (int t = 0; t < s.p; ++t) row.push_back(swap_blocks(probe.entry(j, t), J, shift));
      swapped.push_back(std::move(row));
    }
    const Profile probe_swapped(s.m, s.p, std::move(swapped));

    const ClassPoint out_a = alpha(probe);
    const ClassPoint out_b = alpha(probe_swapped);
    const double d = full_diff(out_a, out_b);
    if (d > cfg.tol) {
      AxiomWitness w;
      w.profiles = {probe, probe_swapped};
      w.deviation = d;
      w.note = "block swap J=[" + std::to_string(J.lo) + "," + std::to_string(J.hi) + "] s=" +
               std::to_string(shift) + " changed the output (probe " + std::to_string(k) + ")";
      report.pass = false;
      report.witness = std::move(w);
      break;
    }
  }
  return report;
}

AxiomReport check_axiom(const std::string& axiom, const Fcaf& alpha, const CheckConfig& cfg) {
  if (axiom == "optimality") return check_optimality(alpha, cfg);
  if (axiom == "independence") return check_independence(alpha, cfg);
  if (axiom == "symmetry") return check_symmetry(alpha, cfg);
  if (axiom == "zero_unanimity") return check_zero_unanimity(alpha, cfg);
  if (axiom == "unanimity") return check_unanimity(alpha, cfg);
  if (axiom == "coherence") return check_coherence(alpha, cfg);
  if (axiom == "non_dictatorship") return check_non_dictatorship(alpha, cfg);
  if (axiom == "anonymity") return check_anonymity(alpha, cfg);
  throw std::invalid_argument("check_axiom: unknown axiom " + axiom);
}

std::vector<AxiomReport> run_all_axioms(const Fcaf& alpha, const CheckConfig& cfg) {
  std::vector<AxiomReport> reports;
  reports.reserve(axiom_ids().size());
  for (const std::string& id : axiom_ids()) reports.push_back(check_axiom(id, alpha, cfg));
  return reports;
}

bool replay_confirms(const Fcaf& alpha, const AxiomReport& report) {
  if (report.pass || !report.witness) return false;
  const AxiomWitness& w = *report.witness;
  const double tol = report.tol;

  if (report.axiom == "optimality") {
    const ClassPoint out = alpha(w.profiles.at(0));
    double sum = 0.0;
    for (int j = 0; j < out.m; ++j) sum += out.at(j, w.type);
    return std::abs(sum - w.expected) > tol;
  }
  if (report.axiom == "independence") {
    const ClassPoint a = alpha(w.profiles.at(0));
    const ClassPoint b = alpha(w.profiles.at(1));
    return row_diff(a, w.object, b, w.object) > tol;
  }
  if (report.axiom == "symmetry") {
    const ClassPoint a = alpha(w.profiles.at(0));
    const ClassPoint b = alpha(w.profiles.at(1));
    return row_diff(a, w.object, b, w.object2) > tol;
  }
  if (report.axiom == "zero_unanimity")
    return alpha(w.profiles.at(0)).at(w.object, w.type) > tol;
  if (report.axiom == "unanimity")
    return std::abs(alpha(w.profiles.at(0)).at(w.object, w.type) - w.expected) > tol;
  if (report.axiom == "coherence") {
    const Bounds b = ess_bounds(w.profiles.at(0).entry(w.object, w.type));
    const double v = alpha(w.profiles.at(0)).at(w.object, w.type);
    return v < b.lo - tol || v > b.hi + tol;
  }
  if (report.axiom == "non_dictatorship") {
    for (const Profile& probe : w.profiles) {
      const ClassPoint out = alpha(probe);
      for (int j = 0; j < probe.m(); ++j)
        for (int t = 0; t < probe.p(); ++t)
          if (std::abs(out.at(j, t) - probe.entry(j, t)(w.location)) > tol) return false;
    }
    return true;
  }
  if (report.axiom == "anonymity") {
    const ClassPoint a = alpha(w.profiles.at(0));
    const ClassPoint b = alpha(w.profiles.at(1));
    return full_diff(a, b) > tol;
  }
  return false;
}

ImplicationReport implication_matrix(const std::vector<Fcaf>& gallery, const CheckConfig& cfg) {
  ImplicationReport result;
  static const std::pair<const char*, const char*> kImplications[] = {
      {"symmetry", "independence"},
      {"coherence", "unanimity"},
      {"unanimity", "zero_unanimity"},
      {"anonymity", "non_dictatorship"},
  };
  for (const Fcaf& alpha : gallery) {
    std::map<std::string, bool> verdicts;
    for (const AxiomReport& r : run_all_axioms(alpha, cfg)) {
      verdicts[r.axiom] = r.pass;
      result.total_probes += r.probes;
    }
    for (const auto& [strong, weak] : kImplications) {
      if (verdicts.at(strong) && !verdicts.at(weak)) {
        result.consistent = false;
        result.violations.push_back(alpha.name + ": " + strong + " -> " + weak);
      }
    }
    result.verdicts[alpha.name] = std::move(verdicts);
  }
  return result;
}

}  // namespace fcagg
