#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fcagg/json_io.hpp"
#include "fcagg/rng.hpp"
#include "test_util.hpp"

using namespace fcagg;

TEST_CASE("piecewise functions round-trip bit-exactly") {
  Rng rng(83);
  for (int k = 0; k < 10; ++k) {
    const PiecewiseFn f = testutil::random_fn(rng);
    const ordered_json j = to_json(f);
    const PiecewiseFn back = piecewise_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    for (int q = 0; q <= 40; ++q) CHECK(back(q / 40.0) == f(q / 40.0));
  }
}

TEST_CASE("measures round-trip") {
  const Measure mu = mixture(
      Measure::from_density(PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 3.0}))),
      Measure::dirac(0.25), 0.7);
  const Measure back = measure_from_json(to_json(mu));
  for (int q = 0; q <= 40; ++q) CHECK(back.cdf(q / 40.0) == mu.cdf(q / 40.0));
  CHECK(to_json(back).dump() == to_json(mu).dump());
}

TEST_CASE("profiles round-trip") {
  const Profile c = example1_profile();
  const Profile back = profile_from_json(to_json(c));
  CHECK(to_json(back).dump() == to_json(c).dump());
  CHECK(back.entry(2, 0)(0.0) == 1.0);
  CHECK(validate_profile(back).pass);
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(piecewise_from_json(ordered_json{{"breakpoints", {0.0, 1.0}},
                                                   {"pieces", ordered_json::array()},
                                                   {"bogus", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_from_json(ordered_json{{"density", nullptr}}), std::invalid_argument);
  CHECK_THROWS_AS(aggregator_from_json(ordered_json{{"kind", "nope"}}), std::invalid_argument);
  CHECK_THROWS_AS(aggregator_from_json(ordered_json{{"kind", "dictator"}, {"i", 0.5}, {"x", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aggregator_from_json(ordered_json{{"kind", "odd_h_mean"}, {"variant", "quartic"}}),
                  std::invalid_argument);
}

TEST_CASE("aggregator specs construct the expected aggregators") {
  const ordered_json dict{{"kind", "dictator"}, {"i", 0.25}};
  const Fcaf d = aggregator_from_json(dict);
  CHECK_NEAR(d(example1_profile()).at(0, 0), 1.0 / 6.0, 1e-14);

  ordered_json mean;
  mean["kind"] = "weighted_mean";
  mean["name"] = "w3i2";
  mean["measure"] =
      to_json(Measure::from_density(PiecewiseFn::from_poly(Polynomial({0.0, 0.0, 3.0}))));
  const Fcaf m = aggregator_from_json(mean);
  CHECK(m.name == "w3i2");
  CHECK_NEAR(m(example1_profile()).at(1, 0), 0.05, 1e-12);

  const Fcaf cube = aggregator_from_json(ordered_json{{"kind", "odd_h_mean"}, {"variant", "cube"}});
  REQUIRE(cube.required_shape.has_value());
  CHECK(cube.required_shape->m == 2);

  for (const char* kind :
       {"prop2_nonoptimal", "prop2_nonindependent", "prop2_nonzerounanimous", "prop2_dictator"}) {
    const Fcaf f = aggregator_from_json(ordered_json{{"kind", kind}});
    CHECK(f.name == kind);
  }

  ordered_json per_type;
  per_type["kind"] = "per_type_mean";
  per_type["measures"] = ordered_json::array();
  for (int t = 0; t < 3; ++t) per_type["measures"].push_back(to_json(Measure::lebesgue()));
  CHECK(aggregator_from_json(per_type).name == "per_type_mean");
}

TEST_CASE("failing axiom reports serialize with replayable witnesses") {
  CheckConfig cfg;
  cfg.probes = 20;
  const Fcaf alpha = prop2_nonzerounanimous();
  const AxiomReport r = check_zero_unanimity(alpha, cfg);
  REQUIRE_FALSE(r.pass);
  const ordered_json j = to_json(r);
  CHECK(j["verdict"] == "fail");
  REQUIRE(j.contains("witness"));
  REQUIRE(j["witness"]["profiles"].size() == 1);

  // the serialized probe reproduces the violation
  const Profile probe = profile_from_json(j["witness"]["profiles"][0]);
  const int object = j["witness"]["object"].get<int>();
  const int type = j["witness"]["type"].get<int>();
  CHECK(alpha(probe).at(object, type) > 1e-9);
}
