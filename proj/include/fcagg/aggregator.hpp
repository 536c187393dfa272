#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcagg/classification.hpp"
#include "fcagg/measure.hpp"

namespace fcagg {

struct Shape {
  int m;
  int p;
};

// A fuzzy classification aggregation function: any map from profiles to a
// single classification. claimed_axioms lists the axiom identifiers the
// construction is expected to pass under the default falsification suites;
// the axioms CLI compares observed verdicts against this set.
struct Fcaf {
  std::string name;
  std::function<ClassPoint(const Profile&)> aggregate;
  std::set<std::string> claimed_axioms;
  std::optional<Shape> required_shape;

  ClassPoint operator()(const Profile& c) const { return aggregate(c); }
};

// All eight axiom identifiers, in suite order.
const std::vector<std::string>& axiom_ids();

// alpha_mu: every entry function is integrated against mu. Claims are
// derived from the measure: anonymity only for the Lebesgue measure,
// non-dictatorship unless mu is a point mass.
Fcaf weighted_mean(Measure mu, std::string name = "weighted_mean");

// alpha_{delta_i}: reads the classification of individual i pointwise,
// respecting atom overrides at i. Identical to weighted_mean(dirac(i)).
Fcaf dictator(double i);

// The four independence-of-axioms constructions. Each is designed to fail
// exactly one of {optimality, independence, zero unanimity,
// non-dictatorship} and pass the other three. The fourth construction is
// dictator(0).
Fcaf prop2_nonoptimal();       // c_0(x) if it is a vertex, else the uniform row
Fcaf prop2_nonindependent();   // dictator 0 or 1, switched by a two-object predicate
Fcaf prop2_nonzerounanimous(); // dictator 0 with the first two objects' outputs swapped
Fcaf prop2_dictator();         // dictator(0), named for the counterexample matrix

enum class OddKind { linear, cube };

// m = p = 2 only. With u = integral of the entry against mu minus 1/2, the
// linear kind outputs u + 1/2 and the cube kind (1/2)(2u)^3 + 1/2. Both are
// odd representers fixing +-1/2, hence symmetric and zero unanimous; the
// cube kind is not a weighted mean.
Fcaf odd_h_mean(OddKind kind, Measure mu);

// Every aggregator shipped with the artifact, used by the implication
// matrix and the acceptance suite.
std::vector<Fcaf> shipped_gallery();

}  // namespace fcagg
