#include <doctest.h>

#include <set>

#include "support/random_plan.hpp"
#include "tgpo/decomp/decompose.hpp"
#include "tgpo/stl/parser.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/util/error.hpp"

using tgpo::DecomposeError;
using tgpo::GroundError;
using tgpo::decomp::decompose;
using tgpo::decomp::ground;
using tgpo::decomp::GroundedPlan;
using tgpo::decomp::sample_uniform;
using tgpo::decomp::SubgoalKind;
using tgpo::decomp::TaskSet;
using tgpo::decomp::TimeAssignment;
using tgpo::decomp::try_ground;
using tgpo::stl::parse;

TEST_CASE("nested reach-hold-reach flattens to three subgoals") {
  TaskSet ts = decompose(parse("F[5,20](mu1 & G[2,6](mu2) & F[3,10](mu3)) & G[0,90](!mu0)"));

  REQUIRE(ts.n_subgoals() == 3);
  REQUIRE(ts.n_constraints() == 1);
  REQUIRE(ts.n_variables() == 2);

  CHECK(ts.variables[0].lo == 5);
  CHECK(ts.variables[0].hi == 20);
  CHECK(ts.variables[1].lo == 3);
  CHECK(ts.variables[1].hi == 10);

  CHECK(ts.subgoals[0].label == "mu1");
  CHECK(ts.subgoals[0].kind == SubgoalKind::Reach);
  CHECK(ts.subgoals[0].start.str() == "t0");
  CHECK(ts.subgoals[0].end.str() == "t0");

  CHECK(ts.subgoals[1].label == "mu2");
  CHECK(ts.subgoals[1].kind == SubgoalKind::Stay);
  CHECK(ts.subgoals[1].start.str() == "t0+2");
  CHECK(ts.subgoals[1].end.str() == "t0+6");

  CHECK(ts.subgoals[2].label == "mu3");
  CHECK(ts.subgoals[2].kind == SubgoalKind::Reach);
  CHECK(ts.subgoals[2].start.str() == "t0+t1");
  CHECK(ts.subgoals[2].end.str() == "t0+t1");

  CHECK(ts.constraints[0].label == "mu0");
  CHECK(ts.constraints[0].start.str() == "0");
  CHECK(ts.constraints[0].end.str() == "90");
}

TEST_CASE("plain hold needs no variables") {
  TaskSet ts = decompose(parse("G[10,20](A)"));
  REQUIRE(ts.n_subgoals() == 1);
  CHECK(ts.n_variables() == 0);
  CHECK(ts.subgoals[0].kind == SubgoalKind::Stay);
  CHECK(ts.subgoals[0].start.str() == "10");
  CHECK(ts.subgoals[0].end.str() == "20");
}

TEST_CASE("until yields a trigger and a guarded window") {
  TaskSet ts = decompose(parse("(!D1) U[0,100] (K1)"));
  REQUIRE(ts.n_subgoals() == 1);
  REQUIRE(ts.n_constraints() == 1);
  REQUIRE(ts.n_variables() == 1);
  CHECK(ts.variables[0].lo == 0);
  CHECK(ts.variables[0].hi == 100);
  CHECK(ts.subgoals[0].label == "K1");
  CHECK(ts.subgoals[0].kind == SubgoalKind::Reach);
  CHECK(ts.subgoals[0].start.str() == "t0");
  CHECK(ts.constraints[0].label == "D1");
  CHECK(ts.constraints[0].start.str() == "0");
  CHECK(ts.constraints[0].end.str() == "t0");
}

TEST_CASE("fragment violations are rejected") {
  CHECK_THROWS_AS(decompose(parse("A | B")), DecomposeError);
  CHECK_THROWS_AS(decompose(parse("G[0,10](F[0,5](A))")), DecomposeError);
  CHECK_THROWS_AS(decompose(parse("(F[0,5](A)) U[0,10] (B)")), DecomposeError);
  CHECK_THROWS_AS(decompose(parse("!(A & B)")), DecomposeError);  // becomes a disjunction
  CHECK_THROWS_AS(decompose(parse("!((A) U[0,5] (B))")), DecomposeError);
}

TEST_CASE("nested holds fuse their windows") {
  TaskSet ts = decompose(parse("G[2,4](G[1,3](A))"));
  REQUIRE(ts.n_subgoals() == 1);
  CHECK(ts.subgoals[0].start.str() == "3");
  CHECK(ts.subgoals[0].end.str() == "7");
  CHECK(ts.n_variables() == 0);
}

TEST_CASE("grounding evaluates sorts and checks") {
  TaskSet ts = decompose(parse("F[5,20](mu1 & G[2,6](mu2) & F[3,10](mu3)) & G[0,90](!mu0)"));

  GroundedPlan plan = ground(ts, {10, 5}, 100);
  REQUIRE(plan.subgoals.size() == 3);
  CHECK(plan.subgoals[0].start == 10);
  CHECK(plan.subgoals[0].end == 10);
  CHECK(plan.subgoals[0].source_index == 0);
  CHECK(plan.subgoals[1].start == 12);
  CHECK(plan.subgoals[1].end == 16);
  CHECK(plan.subgoals[2].start == 15);
  CHECK(plan.subgoals[2].end == 15);
  CHECK(plan.subgoals[2].source_index == 2);
  CHECK(plan.constraints[0].start == 0);
  CHECK(plan.constraints[0].end == 90);

  // same inputs, same plan
  GroundedPlan again = ground(ts, {10, 5}, 100);
  CHECK(again.subgoals[1].start == plan.subgoals[1].start);
  CHECK(again.assignment == plan.assignment);

  CHECK_THROWS_AS(ground(ts, {4, 5}, 100), GroundError);       // below domain
  CHECK_THROWS_AS(ground(ts, {21, 5}, 100), GroundError);      // above domain
  CHECK_THROWS_AS(ground(ts, {10}, 100), GroundError);         // missing variable
  CHECK_THROWS_AS(ground(ts, {20, 10}, 25), GroundError);      // window past horizon
  CHECK_FALSE(try_ground(ts, {20, 10}, 25).has_value());
}

TEST_CASE("ties keep decomposition order") {
  TaskSet ts = decompose(parse("F[3,3](A) & G[3,9](B)"));
  GroundedPlan plan = ground(ts, {3}, 20);
  REQUIRE(plan.subgoals.size() == 2);
  CHECK(plan.subgoals[0].source_index == 0);
  CHECK(plan.subgoals[1].source_index == 1);
}

TEST_CASE("uniform sampling covers domains uniformly") {
  TaskSet ts = decompose(parse("F[5,20](mu1 & G[2,6](mu2) & F[3,10](mu3)) & G[0,90](!mu0)"));
  tgpo::Rng rng(3);

  TaskSet point = decompose(parse("F[5,5](A)"));
  for (int i = 0; i < 20; ++i) CHECK(sample_uniform(point, 100, rng) == TimeAssignment{5});
  CHECK(sample_uniform(decompose(parse("G[0,10](A)")), 100, rng).empty());

  // chi-squared against the uniform law on tau0 in [5,20]: 16 cells, df 15,
  // 1% critical value 30.578
  std::vector<int> counts(16, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[sample_uniform(ts, 100, rng)[0] - 5];
  double expected = n / 16.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 30.578);
}

TEST_CASE("infeasible tasks exhaust the retry budget") {
  TaskSet ts = decompose(parse("F[50,60](A)"));
  tgpo::Rng rng(4);
  CHECK_THROWS_AS(sample_uniform(ts, 10, rng), GroundError);
}

TEST_CASE("variables match the introducing operators") {
  tgpo::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto f = tgpo::testing::random_task_formula(rng);
    TaskSet ts = decompose(f);
    using Kind = tgpo::stl::Formula::Kind;
    CHECK(ts.n_variables() == f.count(Kind::Eventually) + f.count(Kind::Until));
  }
}

TEST_CASE("constructed plans satisfy the source formula") {
  tgpo::Rng rng(6);
  auto regions = tgpo::testing::plan_regions();
  const int horizon = 80;
  int built = 0;
  int tries = 0;
  while (built < 500 && tries < 5000) {
    ++tries;
    auto f = tgpo::testing::random_task_formula(rng);
    TaskSet ts = decompose(f);
    TimeAssignment a;
    try {
      a = sample_uniform(ts, horizon, rng, 200);
    } catch (const GroundError&) {
      continue;  // windows cannot fit the horizon for this draw
    }
    GroundedPlan plan = ground(ts, a, horizon);
    auto sigma = tgpo::testing::satisfying_trajectory(ts, plan, horizon);
    CHECK(tgpo::stl::robustness(sigma, 0, f, regions) >= 0.0);
    ++built;
  }
  CHECK(built >= 500);
}
