#include <doctest.h>

#include "support/random_inputs.hpp"
#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/parser.hpp"
#include "tgpo/util/error.hpp"

using tgpo::ParseError;
using tgpo::stl::Formula;
using tgpo::stl::Interval;
using tgpo::stl::parse;
using Kind = tgpo::stl::Formula::Kind;

TEST_CASE("single eventually") {
  Formula f = parse("F[0,90](A)");
  CHECK(f.kind() == Kind::Eventually);
  CHECK(f.interval().lo == 0);
  CHECK(f.interval().hi == 90);
  CHECK(f.children()[0].kind() == Kind::Predicate);
  CHECK(f.children()[0].label() == "A");
}

TEST_CASE("nested reach-hold-reach with avoidance") {
  Formula f = parse("F[5,20](mu1 & G[2,6](mu2) & F[3,10](mu3)) & G[0,90](!mu0)");
  REQUIRE(f.kind() == Kind::And);
  REQUIRE(f.children().size() == 2);

  const Formula& reach = f.children()[0];
  CHECK(reach.kind() == Kind::Eventually);
  CHECK(reach.interval().lo == 5);
  CHECK(reach.interval().hi == 20);
  REQUIRE(reach.children()[0].kind() == Kind::And);
  REQUIRE(reach.children()[0].children().size() == 3);
  CHECK(reach.children()[0].children()[0].label() == "mu1");
  CHECK(reach.children()[0].children()[1].kind() == Kind::Always);
  CHECK(reach.children()[0].children()[2].kind() == Kind::Eventually);

  const Formula& avoid = f.children()[1];
  CHECK(avoid.kind() == Kind::Always);
  CHECK(avoid.children()[0].kind() == Kind::Not);
  CHECK(avoid.children()[0].children()[0].label() == "mu0");
}

TEST_CASE("until of negated predicate") {
  Formula f = parse("(!D1) U[0,100] (K1)");
  REQUIRE(f.kind() == Kind::Until);
  CHECK(f.children()[0].kind() == Kind::Not);
  CHECK(f.children()[1].label() == "K1");
  CHECK(tgpo::stl::format(f) == "(!D1) U[0,100] (K1)");
}

TEST_CASE("until binds after any term") {
  Formula f = parse("A U[2,5](B)");
  CHECK(f.kind() == Kind::Until);
  CHECK(f.children()[0].label() == "A");
}

TEST_CASE("format fixed points") {
  CHECK(tgpo::stl::format(Formula::boolean_true()) == "True");
  CHECK(tgpo::stl::format(Formula::eventually(Interval(0, 90), Formula::predicate("A"))) ==
        "F[0,90](A)");
}

TEST_CASE("empty interval is rejected") {
  CHECK_THROWS_AS(parse("G[5,3](A)"), ParseError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("F[0,90](A");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos == 9);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("A &"), ParseError);
  CHECK_THROWS_AS(parse("A ) B"), ParseError);
  CHECK_THROWS_AS(parse("F[-1,3](A)"), ParseError);
}

TEST_CASE("whitespace is insignificant") {
  Formula a = parse("F[5,20](A&B)");
  Formula b = parse("  F [ 5 , 20 ] ( A & B )  ");
  CHECK(a.structurally_equal(b));
}

TEST_CASE("operator letters double as region labels") {
  Formula f = parse("F[70,80](F)");
  CHECK(f.kind() == Kind::Eventually);
  CHECK(f.children()[0].label() == "F");

  Formula g = parse("F[80,90](G[0,5](G))");
  CHECK(g.children()[0].kind() == Kind::Always);
  CHECK(g.children()[0].children()[0].label() == "G");
}

TEST_CASE("disjunction has lowest precedence") {
  Formula f = parse("A & B | C");
  REQUIRE(f.kind() == Kind::Or);
  CHECK(f.children()[0].kind() == Kind::And);
  CHECK(f.children()[1].label() == "C");
}

TEST_CASE("parse after format is the identity") {
  tgpo::Rng rng(20260825);
  for (int i = 0; i < 500; ++i) {
    Formula f = tgpo::testing::random_formula(rng, 4);
    Formula back = parse(tgpo::stl::format(f));
    CHECK(f.structurally_equal(back));
  }
}
