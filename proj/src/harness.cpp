#include "fcagg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "fcagg/axioms.hpp"
#include "fcagg/rng.hpp"

namespace fcagg {

namespace {

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

// one prefix probe: mu^t([0,x]) read from the black box
double prefix_mass(const Fcaf& alpha, int m, int p, int t, double x, double tol) {
  const IntervalSet J = x == 0.0 ? IntervalSet{{0.0, 0.0}} : IntervalSet{{0.0, x}};
  const Profile probe = indicator_probe_profile(m, p, t, J);
  const ClassPoint out = alpha(probe);
  const ClassPointCheck check = validate_class_point(out, std::max(tol, 1e-9));
  if (!check.ok)
    throw ProtocolError("extract_measure: black box returned an invalid classification: " + check.message,
                        "prefix probe t=" + std::to_string(t) + " x=" + std::to_string(x));
  return out.at(0, t);
}

double lebesgue_mass(const PiecewiseFn& f) {
  double total = 0.0;
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k)
    total += f.pieces()[k].integral(bps[k], bps[k + 1]);
  return total;
}

}  // namespace

ExtractionResult extract_measure(const Fcaf& alpha, const ExtractionConfig& cfg) {
  const Shape s = alpha.required_shape.value_or(cfg.shape);
  if (s.m < 3) throw std::invalid_argument("extract_measure: needs m >= 3");
  if (cfg.grid_n < 2 || cfg.fine_n < 2) throw std::invalid_argument("extract_measure: grid too small");

  ExtractionResult result{.grid = {},
                          .cdf_values = {},
                          .detected_atoms = {},
                          .reconstructed = Measure::lebesgue(),
                          .max_type_deviation = 0.0,
                          .match_deviation = 0.0,
                          .single_type = s.p == 2};

  // reported CDF grid, one pass per contrast type
  result.grid.resize(static_cast<std::size_t>(cfg.grid_n));
  for (int k = 0; k < cfg.grid_n; ++k)
    result.grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (cfg.grid_n - 1);
  for (int t = 1; t < s.p; ++t) {
    std::vector<double> cdf;
    cdf.reserve(result.grid.size());
    for (double x : result.grid) cdf.push_back(prefix_mass(alpha, s.m, s.p, t, x, cfg.tol));
    result.cdf_values.push_back(std::move(cdf));
  }
  for (std::size_t t = 1; t < result.cdf_values.size(); ++t)
    for (std::size_t k = 0; k < result.grid.size(); ++k)
      result.max_type_deviation = std::max(
          result.max_type_deviation, std::abs(result.cdf_values[t][k] - result.cdf_values[0][k]));

  // fine prefix scan of type 1 backs the reconstruction
  const int K = cfg.fine_n;
  std::vector<double> fine(static_cast<std::size_t>(K) + 1);
  for (int c = 0; c <= K; ++c)
    fine[static_cast<std::size_t>(c)] = prefix_mass(alpha, s.m, s.p, 1, static_cast<double>(c) / K, cfg.tol);

  std::vector<double> increments(static_cast<std::size_t>(K));
  for (int c = 0; c < K; ++c)
    increments[static_cast<std::size_t>(c)] = fine[static_cast<std::size_t>(c) + 1] - fine[static_cast<std::size_t>(c)];

  std::vector<PointMass> atoms;
  std::set<int> atom_cells;
  if (fine[0] > cfg.atom_threshold) atoms.push_back({0.0, fine[0]});

  // flag cells whose increment beats the neighbour trend, then bisect: real
  // point masses survive as the bracket shrinks, density features do not
  for (int c = 0; c < K; ++c) {
    const double inc = increments[static_cast<std::size_t>(c)];
    double trend = 0.0;
    if (c == 0)
      trend = increments[1];
    else if (c == K - 1)
      trend = increments[static_cast<std::size_t>(K) - 2];
    else
      trend = std::min(increments[static_cast<std::size_t>(c) - 1], increments[static_cast<std::size_t>(c) + 1]);
    if (inc - trend <= cfg.atom_threshold) continue;

    double lo = static_cast<double>(c) / K, hi = static_cast<double>(c + 1) / K;
    double f_lo = fine[static_cast<std::size_t>(c)], f_hi = fine[static_cast<std::size_t>(c) + 1];
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = prefix_mass(alpha, s.m, s.p, 1, mid, cfg.tol);
      if (f_mid - f_lo >= f_hi - f_mid) {
        hi = mid;
        f_hi = f_mid;
      } else {
        lo = mid;
        f_lo = f_mid;
      }
    }
    const double mass = f_hi - f_lo;
    if (mass > cfg.atom_threshold) {
      atoms.push_back({0.5 * (lo + hi), mass});
      increments[static_cast<std::size_t>(c)] -= mass;
      atom_cells.insert(c);
    }
  }

  // cell averages of the remaining (density) mass
  const double dx = 1.0 / K;
  std::vector<double> avg(static_cast<std::size_t>(K));
  for (int c = 0; c < K; ++c)
    avg[static_cast<std::size_t>(c)] = std::max(0.0, increments[static_cast<std::size_t>(c)] / dx);

  // a density step inside a cell leaves that cell's average strictly between
  // its neighbours' plateaus; bisect on which half-cell average still matches
  // its plateau, then split the cell into two exact flat pieces
  struct CellSplit {
    double x;
    double left_avg;
    double right_avg;
  };
  std::map<int, CellSplit> splits;
  for (int c = 1; c + 1 < K; ++c) {
    if (atom_cells.count(c) > 0) continue;
    const double ref_left = avg[static_cast<std::size_t>(c) - 1];
    const double ref_right = avg[static_cast<std::size_t>(c) + 1];
    const double here = avg[static_cast<std::size_t>(c)];
    const double step = ref_right - ref_left;
    if (std::abs(step) < 0.005 * (1.0 + std::abs(ref_left) + std::abs(ref_right))) continue;
    const double margin = 0.02 * std::abs(step);
    const bool between = (step > 0.0 && here > ref_left + margin && here < ref_right - margin) ||
                         (step < 0.0 && here < ref_left - margin && here > ref_right + margin);
    if (!between) continue;

    double lo = static_cast<double>(c) / K, hi = static_cast<double>(c + 1) / K;
    double f_lo = fine[static_cast<std::size_t>(c)], f_hi = fine[static_cast<std::size_t>(c) + 1];
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = prefix_mass(alpha, s.m, s.p, 1, mid, cfg.tol);
      const double left_avg = (f_mid - f_lo) / (mid - lo);
      const double right_avg = (f_hi - f_mid) / (hi - mid);
      // descend into the impure half, the one holding the step
      if (std::abs(left_avg - ref_left) >= std::abs(right_avg - ref_right)) {
        hi = mid;
        f_hi = f_mid;
      } else {
        lo = mid;
        f_lo = f_mid;
      }
    }
    const double x = 0.5 * (lo + hi);
    const double z_lo = static_cast<double>(c) / K, z_hi = static_cast<double>(c + 1) / K;
    if (x - z_lo < 1e-9 || z_hi - x < 1e-9) continue;
    const double f_cut = prefix_mass(alpha, s.m, s.p, 1, x, cfg.tol);
    splits.emplace(c, CellSplit{x,
                                std::max(0.0, (f_cut - fine[static_cast<std::size_t>(c)]) / (x - z_lo)),
                                std::max(0.0, (fine[static_cast<std::size_t>(c) + 1] - f_cut) / (z_hi - x))});
  }

  // slope-limited piecewise-linear density; cells straddling a localized
  // step are split at the step, and cells next to a split use one-sided
  // slopes so the mixed average of the split cell never pollutes them
  std::vector<double> slopes(static_cast<std::size_t>(K), 0.0);
  for (int c = 1; c + 1 < K; ++c) {
    if (splits.count(c) > 0) continue;
    const double fwd = (avg[static_cast<std::size_t>(c) + 1] - avg[static_cast<std::size_t>(c)]) / dx;
    const double bwd = (avg[static_cast<std::size_t>(c)] - avg[static_cast<std::size_t>(c) - 1]) / dx;
    const bool split_right = splits.count(c + 1) > 0;
    const bool split_left = splits.count(c - 1) > 0;
    if (!split_right && !split_left)
      slopes[static_cast<std::size_t>(c)] = minmod(fwd, bwd);
    else if (split_right && !split_left)
      slopes[static_cast<std::size_t>(c)] = bwd;
    else if (split_left && !split_right)
      slopes[static_cast<std::size_t>(c)] = fwd;
  }

  auto linear_piece = [](double average, double slope, double lo, double hi) {
    const double cap = 2.0 * average / (hi - lo);  // keeps the piece nonnegative
    const double s = std::clamp(slope, -cap, cap);
    const double center = 0.5 * (lo + hi);
    return Polynomial({average - s * center, s});
  };

  std::vector<double> bps{0.0};
  std::vector<Polynomial> pieces;
  pieces.reserve(static_cast<std::size_t>(K) + splits.size());
  for (int c = 0; c < K; ++c) {
    const double z_lo = static_cast<double>(c) / K;
    const double z_hi = c + 1 == K ? 1.0 : static_cast<double>(c + 1) / K;
    const auto split = splits.find(c);
    if (split != splits.end()) {
      const double slope_left = c > 0 ? slopes[static_cast<std::size_t>(c) - 1] : 0.0;
      const double slope_right = c + 1 < K ? slopes[static_cast<std::size_t>(c) + 1] : 0.0;
      pieces.push_back(linear_piece(split->second.left_avg, slope_left, z_lo, split->second.x));
      bps.push_back(split->second.x);
      pieces.push_back(linear_piece(split->second.right_avg, slope_right, split->second.x, z_hi));
      bps.push_back(z_hi);
      continue;
    }
    pieces.push_back(linear_piece(avg[static_cast<std::size_t>(c)], slopes[static_cast<std::size_t>(c)], z_lo, z_hi));
    bps.push_back(z_hi);
  }
  PiecewiseFn density(bps, std::move(pieces));

  // proportional renormalization, iterated so the constructor's own
  // summation sees a total within its tolerance; a conforming black box
  // needs only a rounding-level correction here, a non-conforming one gets
  // a best-effort probability measure and a large match deviation
  double mass_total = 0.0;
  for (const PointMass& pm : atoms) mass_total += pm.mass;
  if (lebesgue_mass(density) + mass_total <= 1e-9) density = PiecewiseFn::constant(1.0);
  for (int pass = 0; pass < 3; ++pass) {
    const double total = lebesgue_mass(density) + mass_total;
    const double scale = 1.0 / total;
    density = linear_combine(scale, density, 0.0, PiecewiseFn::constant(0.0));
    mass_total = 0.0;
    for (PointMass& pm : atoms) {
      pm.mass *= scale;
      mass_total += pm.mass;
    }
  }
  result.detected_atoms = atoms;
  result.reconstructed = Measure(std::move(density), std::move(atoms));

  // black box vs the weighted mean of the reconstruction
  const Fcaf mirror = weighted_mean(result.reconstructed, "reconstructed");
  Rng rng(cfg.seed);
  for (int v = 0; v < cfg.validation_n; ++v) {
    const Profile probe = random_profile(rng.fork(static_cast<std::uint64_t>(v)).next_u64(), s.m, s.p, 3, 0.08);
    const ClassPoint a = alpha(probe);
    const ClassPoint b = mirror(probe);
    for (int j = 0; j < s.m; ++j)
      for (int t = 0; t < s.p; ++t)
        result.match_deviation = std::max(result.match_deviation, std::abs(a.at(j, t) - b.at(j, t)));
  }
  return result;
}

bool consistency_check(const ExtractionResult& r, double tol) {
  return r.max_type_deviation <= tol;
}

AdditivityReport additivity_probe(const Fcaf& alpha, std::uint64_t seed, int probes, Shape shape) {
  const Shape s = alpha.required_shape.value_or(shape);
  AdditivityReport report;
  report.probes = probes;
  const double eps = 1.0 / (2.0 * s.m);
  const double base = 1.0 / s.p;

  std::vector<std::vector<PiecewiseFn>> base_entries(
      static_cast<std::size_t>(s.m),
      std::vector<PiecewiseFn>(static_cast<std::size_t>(s.p), PiecewiseFn::constant(base)));
  const Profile base_profile(s.m, s.p, std::move(base_entries));

  const Rng root(seed);
  for (int k = 0; k < probes; ++k) {
    Rng rng = root.fork(static_cast<std::uint64_t>(k));
    const int t = rng.next_index(s.p);
    int t2 = rng.next_index(s.p - 1);
    if (t2 >= t) ++t2;

    auto perturbed = [&](const PiecewiseFn& fn) {
      Profile c = base_profile.with_entry(0, t, linear_combine(1.0, base_profile.entry(0, t), 1.0, fn));
      c = c.with_entry(0, t2, linear_combine(1.0, c.entry(0, t2), -1.0, fn));
      if (s.m == s.p) {
        c = c.with_entry(1, t, linear_combine(1.0, c.entry(1, t), -1.0, fn));
        c = c.with_entry(1, t2, linear_combine(1.0, c.entry(1, t2), 1.0, fn));
      }
      return c;
    };
    const double base_out = alpha(base_profile).at(0, t);
    auto response = [&](const PiecewiseFn& fn) { return alpha(perturbed(fn)).at(0, t) - base_out; };

    PiecewiseFn f = PiecewiseFn::constant(eps);
    PiecewiseFn g = PiecewiseFn::constant(eps);
    if (k > 0) {
      std::vector<double> grid{0.0, rng.next_in(0.3, 0.7), 1.0};
      auto draw = [&]() {
        std::vector<Polynomial> gp;
        for (std::size_t q = 0; q + 1 < grid.size(); ++q) {
          const Polynomial raw({rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)});
          const Extrema e = extrema_on(raw, grid[q], grid[q + 1]);
          const double peak = std::max(std::abs(e.min), std::abs(e.max));
          const double target = eps * rng.next_in(0.2, 1.0);
          gp.push_back(peak < 1e-12 ? Polynomial::constant(target) : (target / peak) * raw);
        }
        return PiecewiseFn(grid, std::move(gp));
      };
      f = draw();
      g = draw();
    }

    const double rf = response(f);
    const double rg = response(g);
    const double rfg = response(linear_combine(1.0, f, 1.0, g));
    const double dev = std::abs(rfg - rf - rg);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_f = rf;
      report.worst_g = rg;
      report.worst_fg = rfg;
      report.note = "probe " + std::to_string(k) + (k == 0 ? " (constant witness)" : "");
    }
  }
  return report;
}

HTable extract_h(const Fcaf& alpha, int grid_n) {
  if (grid_n < 3) throw std::invalid_argument("extract_h: grid too small");
  const Shape s = alpha.required_shape.value_or(Shape{2, 2});
  if (s.m != 2 || s.p != 2) throw std::invalid_argument("extract_h: defined for m = p = 2 only");

  CheckConfig pre;
  pre.probes = 20;
  pre.shape = {2, 2};
  const AxiomReport sym = check_symmetry(alpha, pre);
  const AxiomReport zu = check_zero_unanimity(alpha, pre);
  if (!sym.pass || !zu.pass)
    throw std::runtime_error(std::string("extract_h: precondition failed: ") +
                             (!sym.pass ? "symmetry suite found a counterexample"
                                        : "zero-unanimity suite found a counterexample"));

  HTable table;
  for (int k = 0; k < grid_n; ++k) {
    const double a = static_cast<double>(k) / (grid_n - 1);
    std::vector<std::vector<PiecewiseFn>> entries;
    entries.push_back({PiecewiseFn::constant(a), PiecewiseFn::constant(1.0 - a)});
    entries.push_back({PiecewiseFn::constant(1.0 - a), PiecewiseFn::constant(a)});
    const Profile probe(2, 2, std::move(entries));
    table.u.push_back(a - 0.5);
    table.h_hat.push_back(alpha(probe).at(0, 0) - 0.5);
  }
  for (int k = 0; k < grid_n; ++k) {
    const double paired = table.h_hat[static_cast<std::size_t>(k)] +
                          table.h_hat[static_cast<std::size_t>(grid_n - 1 - k)];
    table.max_oddness = std::max(table.max_oddness, std::abs(paired));
  }
  table.fixed_points_ok = std::abs(table.h_hat.back() - 0.5) <= 1e-9 &&
                          std::abs(table.h_hat.front() + 0.5) <= 1e-9;
  return table;
}

Example1Report example1_report() {
  Example1Report report;
  const Profile profile = example1_profile();
  const Fcaf mean =
      weighted_mean(Measure::from_density(PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 3.0}))), "mean_w3i2");
  report.table = mean(profile);
  report.exact = {{0.5, 1.0 / 3.0, 1.0 / 6.0}, {0.05, 0.45, 0.5}, {0.0, 1.0, 0.0},
                  {1.0, 0.0, 0.0},             {0.0, 1.0, 0.0},   {0.0, 0.0, 1.0}};
  for (int j = 0; j < 6; ++j)
    for (int t = 0; t < 3; ++t)
      report.max_deviation = std::max(
          report.max_deviation,
          std::abs(report.table.at(j, t) - report.exact[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]));

  constexpr int kCurveSamples = 101;
  for (int k = 0; k < kCurveSamples; ++k) {
    const double i = static_cast<double>(k) / (kCurveSamples - 1);
    CurveSample s1{i, {}};
    CurveSample s2{i, {}};
    for (int t = 0; t < 3; ++t) {
      s1.values.push_back(profile.entry(0, t)(i));
      s2.values.push_back(profile.entry(1, t)(i));
    }
    report.curve_x1.push_back(std::move(s1));
    report.curve_x2.push_back(std::move(s2));
  }
  return report;
}

Fcaf per_type_mean(std::vector<Measure> measures) {
  Fcaf f;
  f.name = "per_type_mean";
  f.aggregate = [measures = std::move(measures)](const Profile& c) {
    if (static_cast<int>(measures.size()) != c.p())
      throw std::invalid_argument("per_type_mean: one measure per type required");
    ClassPoint out;
    out.m = c.m();
    out.p = c.p();
    out.values.assign(static_cast<std::size_t>(c.m()),
                      std::vector<double>(static_cast<std::size_t>(c.p()), 0.0));
    for (int j = 0; j < c.m(); ++j) {
      double row_sum = 0.0;
      for (int t = 0; t < c.p(); ++t) {
        const double v = measures[static_cast<std::size_t>(t)].integrate(c.entry(j, t));
        out.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = v;
        row_sum += v;
      }
      for (int t = 0; t < c.p(); ++t) {
        auto& v = out.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
        v = row_sum > 0.0 ? v / row_sum : 1.0 / c.p();
      }
    }
    return out;
  };
  return f;
}

}  // namespace fcagg
