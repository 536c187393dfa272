#include "fcagg/aggregator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fcagg {

namespace {

constexpr double kVertexTol = 1e-12;

bool is_vertex_row(const std::vector<double>& row) {
  int ones = 0;
  for (double v : row) {
    if (std::abs(v - 1.0) <= kVertexTol)
      ++ones;
    else if (std::abs(v) > kVertexTol)
      return false;
  }
  return ones == 1;
}

double lebesgue_integral(const PiecewiseFn& f) {
  double total = 0.0;
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k)
    total += f.pieces()[k].integral(bps[k], bps[k + 1]);
  return total;
}

bool is_lebesgue(const Measure& mu) {
  return mu.masses().empty() && ae_equal(mu.density(), PiecewiseFn::constant(1.0), 1e-12);
}

bool is_dirac(const Measure& mu) {
  return mu.masses().size() == 1 && std::abs(mu.masses().front().mass - 1.0) <= 1e-12;
}

std::set<std::string> weighted_mean_claims(const Measure& mu) {
  std::set<std::string> claims{"optimality", "independence", "symmetry",
                               "zero_unanimity", "unanimity", "coherence"};
  if (is_lebesgue(mu)) claims.insert("anonymity");
  if (!is_dirac(mu)) claims.insert("non_dictatorship");
  return claims;
}

}  // namespace

const std::vector<std::string>& axiom_ids() {
  static const std::vector<std::string> ids{"optimality",     "independence", "symmetry",
                                            "zero_unanimity", "unanimity",    "coherence",
                                            "non_dictatorship", "anonymity"};
  return ids;
}

Fcaf weighted_mean(Measure mu, std::string name) {
  Fcaf f;
  f.name = std::move(name);
  f.claimed_axioms = weighted_mean_claims(mu);
  f.aggregate = [mu = std::move(mu)](const Profile& c) {
    ClassPoint out;
    out.m = c.m();
    out.p = c.p();
    out.values.assign(static_cast<std::size_t>(c.m()),
                      std::vector<double>(static_cast<std::size_t>(c.p()), 0.0));
    for (int j = 0; j < c.m(); ++j)
      for (int t = 0; t < c.p(); ++t)
        out.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
            mu.integrate(c.entry(j, t));
    return out;
  };
  return f;
}

Fcaf dictator(double i) {
  if (i < 0.0 || i > 1.0) throw std::invalid_argument("dictator: individual outside [0,1]");
  Fcaf f = weighted_mean(Measure::dirac(i), "dictator_" + std::to_string(i));
  return f;
}

Fcaf prop2_nonoptimal() {
  Fcaf f;
  f.name = "prop2_nonoptimal";
  f.claimed_axioms = {"independence", "symmetry", "zero_unanimity", "non_dictatorship"};
  f.aggregate = [](const Profile& c) {
    ClassPoint c0 = c.at(0.0);
    const double uniform = 1.0 / c.p();
    for (auto& row : c0.values)
      if (!is_vertex_row(row)) row.assign(row.size(), uniform);
    return c0;
  };
  return f;
}

Fcaf prop2_nonindependent() {
  Fcaf f;
  f.name = "prop2_nonindependent";
  f.claimed_axioms = {"optimality", "zero_unanimity", "unanimity", "coherence", "non_dictatorship"};
  f.aggregate = [](const Profile& c) {
    // partition of the profile space coupling two objects: compare the
    // Lebesgue means of the first two objects' type-0 proportions
    const double a = lebesgue_integral(c.entry(0, 0));
    const double b = lebesgue_integral(c.entry(1, 0));
    return c.at(a >= b ? 0.0 : 1.0);
  };
  return f;
}

Fcaf prop2_nonzerounanimous() {
  Fcaf f;
  f.name = "prop2_nonzerounanimous";
  f.claimed_axioms = {"optimality", "independence", "non_dictatorship"};
  f.aggregate = [](const Profile& c) {
    ClassPoint c0 = c.at(0.0);
    std::swap(c0.values[0], c0.values[1]);
    return c0;
  };
  return f;
}

Fcaf prop2_dictator() {
  Fcaf f = dictator(0.0);
  f.name = "prop2_dictator";
  return f;
}

Fcaf odd_h_mean(OddKind kind, Measure mu) {
  Fcaf f;
  f.name = kind == OddKind::linear ? "odd_h_linear" : "odd_h_cube";
  f.required_shape = Shape{2, 2};
  f.claimed_axioms = {"optimality", "independence", "symmetry", "zero_unanimity", "non_dictatorship"};
  if (kind == OddKind::linear) {
    f.claimed_axioms.insert({"unanimity", "coherence"});
  }
  if (is_lebesgue(mu)) f.claimed_axioms.insert("anonymity");
  f.aggregate = [kind, mu = std::move(mu)](const Profile& c) {
    if (c.m() != 2 || c.p() != 2)
      throw std::invalid_argument("odd_h_mean: defined for m = p = 2 profiles only");
    ClassPoint out;
    out.m = 2;
    out.p = 2;
    out.values.assign(2, std::vector<double>(2, 0.0));
    for (int j = 0; j < 2; ++j)
      for (int t = 0; t < 2; ++t) {
        const double u = mu.integrate(c.entry(j, t)) - 0.5;
        const double h = kind == OddKind::linear ? u : 0.5 * std::pow(2.0 * u, 3);
        out.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = h + 0.5;
      }
    return out;
  };
  return f;
}

std::vector<Fcaf> shipped_gallery() {
  std::vector<Fcaf> gallery;
  gallery.push_back(weighted_mean(Measure::lebesgue(), "mean_lebesgue"));
  gallery.push_back(weighted_mean(Measure::from_density(PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 3.0}))),
                                  "mean_w3i2"));
  gallery.push_back(
      weighted_mean(mixture(Measure::lebesgue(), Measure::dirac(0.7), 0.5), "mean_half_dirac"));
  gallery.push_back(dictator(0.3));
  gallery.push_back(prop2_nonoptimal());
  gallery.push_back(prop2_nonindependent());
  gallery.push_back(prop2_nonzerounanimous());
  gallery.push_back(prop2_dictator());
  gallery.push_back(odd_h_mean(OddKind::linear, Measure::lebesgue()));
  gallery.push_back(odd_h_mean(OddKind::cube, Measure::lebesgue()));
  return gallery;
}

}  // namespace fcagg
