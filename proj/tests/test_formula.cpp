#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/properties.hpp"

using namespace influence;
using fixtures::q;
using fixtures::set;

namespace {

Formula random_formula(std::mt19937& rng, const std::vector<Agent>& agents, int depth) {
  int pick = depth == 0 ? 0 : std::uniform_int_distribution<int>(0, 2)(rng);
  if (pick == 1) return Formula::negation(random_formula(rng, agents, depth - 1));
  if (pick == 2) return Formula::implies(random_formula(rng, agents, depth - 1), random_formula(rng, agents, depth - 1));
  return Formula::atom(fixtures::random_subset(rng, agents), properties::random_budget(rng),
                       fixtures::random_subset(rng, agents));
}

}  // namespace

TEST(ParseFormula, Atom) {
  Formula f = parse_formula("{v} |>3 {x,z}");
  ASSERT_TRUE(f.is_atom());
  EXPECT_EQ(f.as_atom(), (AtomicStatement{set({"v"}), q(3), set({"x", "z"})}));
}

TEST(ParseFormula, NegationNeedsNoBracesForSingletons) {
  Formula f = parse_formula("!({a} |>0 {b})");
  EXPECT_EQ(f, Formula::negation(Formula::atom(set({"a"}), q(0), set({"b"}))));
  EXPECT_EQ(parse_formula("!a |>0 b"), f);
}

TEST(ParseFormula, ImplicationIsRightAssociative) {
  Formula f = parse_formula("{a}|>1{b} -> {a}|>2{b} -> {c}|>0{}");
  auto a1 = Formula::atom(set({"a"}), q(1), set({"b"}));
  auto a2 = Formula::atom(set({"a"}), q(2), set({"b"}));
  auto a3 = Formula::atom(set({"c"}), q(0), {});
  EXPECT_EQ(f, Formula::implies(a1, Formula::implies(a2, a3)));
  EXPECT_EQ(parse_formula("({a}|>1{b} -> {a}|>2{b}) -> {c}|>0{}"), Formula::implies(Formula::implies(a1, a2), a3));
}

TEST(ParseFormula, NegationBindsTighterThanImplication) {
  auto a = Formula::atom(set({"a"}), q(1), set({"b"}));
  EXPECT_EQ(parse_formula("!{a}|>1{b} -> {a}|>1{b}"), Formula::implies(Formula::negation(a), a));
}

TEST(ParseFormula, BudgetLiterals) {
  EXPECT_EQ(parse_formula("{a} |>1/2 {b}").as_atom().budget, q(1, 2));
  EXPECT_EQ(parse_formula("{a} |>0.75 {b}").as_atom().budget, q(3, 4));
  EXPECT_EQ(parse_formula("{a,a,b} |>0 {}").as_atom().left, set({"a", "b"}));
}

TEST(ParseFormula, Errors) {
  EXPECT_THROW(parse_formula("{a} |>-1 {b}"), ValueError);
  EXPECT_THROW(parse_formula("{a} |> {b}"), ParseError);
  EXPECT_THROW(parse_formula("{a} |>1 {b"), ParseError);
  EXPECT_THROW(parse_formula("{a} |>1 {b} ->"), ParseError);
  EXPECT_THROW(parse_formula("{a} |>1 {b})"), ParseError);
  EXPECT_THROW(parse_formula("{1a} |>1 {b}"), ParseError);
  try {
    parse_formula("{a} |>1 {b} junk");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 12U);
  }
}

TEST(PrintFormula, CanonicalRendering) {
  EXPECT_EQ(print_formula(parse_formula("{ c , a }|>1{d}")), "{a,c} |>1 {d}");
  EXPECT_EQ(print_formula(parse_formula("({a}|>1{b} -> {a}|>2{b}) -> !{c}|>1/2{}")),
            "({a} |>1 {b} -> {a} |>2 {b}) -> !{c} |>1/2 {}");
  EXPECT_EQ(print_formula(parse_formula("!({a}|>1{b} -> {a}|>2{b})")), "!({a} |>1 {b} -> {a} |>2 {b})");
}

TEST(PrintFormula, RoundTripOnRandomFormulas) {
  std::mt19937 rng(31);
  auto agents = fixtures::agent_names(5);
  for (int t = 0; t < 500; ++t) {
    Formula f = random_formula(rng, agents, 4);
    ASSERT_EQ(parse_formula(print_formula(f)), f) << print_formula(f);
  }
}

TEST(Evaluate, CanonicalThreeRulesPromotional) {
  auto net = build_promotional_canonical(fixtures::three_rules()).network;
  EXPECT_TRUE(evaluate(net, parse_formula("{a,c} |>1 {d}"), SemanticsMode::Promotional));
  EXPECT_FALSE(evaluate(net, parse_formula("{a,c} |>1/2 {d}"), SemanticsMode::Promotional));
}

TEST(Evaluate, Net1Preventive) {
  auto net = fixtures::net1();
  EXPECT_TRUE(evaluate(net, parse_formula("{x} |>0 {z}"), SemanticsMode::Preventive));
  EXPECT_FALSE(evaluate(net, parse_formula("{x} |>1/2 {z}"), SemanticsMode::Preventive));
}

TEST(Evaluate, EmptyTargetIsAlwaysTrue) {
  auto net = fixtures::net1();
  for (auto mode : {SemanticsMode::Promotional, SemanticsMode::Preventive})
    EXPECT_TRUE(evaluate(net, parse_formula("{} |>0 {}"), mode));
}

TEST(Evaluate, UnknownAgentsAreRejectedEvenWhenShortCircuited) {
  auto net = fixtures::net1();
  EXPECT_THROW(evaluate(net, parse_formula("{q} |>0 {x}"), SemanticsMode::Promotional), InputError);
  // The antecedent is false, so evaluation alone would never look at {w}.
  EXPECT_THROW(evaluate(net, parse_formula("{} |>0 {x} -> {w} |>0 {x}"), SemanticsMode::Promotional), InputError);
}

TEST(Evaluate, ClassicalConnectives) {
  std::mt19937 rng(32);
  for (int t = 0; t < 60; ++t) {
    auto net = fixtures::random_network(rng, {1, 5, 0.4, 0.4, 1000});
    for (auto mode : {SemanticsMode::Promotional, SemanticsMode::Preventive}) {
      Formula f = random_formula(rng, net.agents(), 2);
      Formula g = random_formula(rng, net.agents(), 2);
      bool vf = evaluate(net, f, mode);
      bool vg = evaluate(net, g, mode);
      EXPECT_EQ(evaluate(net, Formula::negation(Formula::negation(f)), mode), vf);
      EXPECT_EQ(evaluate(net, Formula::implies(f, g), mode), !vf || vg);
    }
  }
}

TEST(Evaluate, ReflexiveAtomsHoldEverywhere) {
  std::mt19937 rng(33);
  for (int t = 0; t < 80; ++t) {
    auto net = fixtures::random_network(rng, {1, 6, 0.4, 0.4, 1000});
    auto a = fixtures::random_subset(rng, net.agents(), 0.5);
    auto b = properties::intersection(a, fixtures::random_subset(rng, net.agents(), 0.5));
    auto p = properties::random_budget(rng);
    for (auto mode : {SemanticsMode::Promotional, SemanticsMode::Preventive})
      EXPECT_TRUE(evaluate_atom(net, {a, p, b}, mode));
  }
}
