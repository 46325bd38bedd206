#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/properties.hpp"

using namespace influence;
using fixtures::q;
using fixtures::set;

namespace {

SocialNetwork three_rules_network() { return build_promotional_canonical(fixtures::three_rules()).network; }

}  // namespace

TEST(MinPromotionBudget, ThreeRulesSingleHypothesis) {
  auto r = min_promotion_budget(three_rules_network(), set({"a", "c"}), set({"d"}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.min_budget, q(1));
  EXPECT_EQ(r.witness, fixtures::spend({{"alpha_1", q(1)}}));
}

TEST(MinPromotionBudget, ThreeRulesTwoHypothesesChained) {
  auto r = min_promotion_budget(three_rules_network(), set({"b", "c"}), set({"d"}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.min_budget, q(3));
  EXPECT_EQ(r.witness, fixtures::spend({{"alpha_1", q(1)}, {"alpha_2", q(2)}}));
}

TEST(MinPromotionBudget, TargetInsideSeedIsFree) {
  auto r = min_promotion_budget(fixtures::net1(), set({"x", "y"}), set({"y"}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.min_budget, q(0));
  EXPECT_TRUE(r.witness.entries().empty());
}

TEST(MinPromotionBudget, Net2MarketingThenPeers) {
  auto r = min_promotion_budget(fixtures::net2(), {}, set({"u", "v"}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.min_budget, q(2));
  EXPECT_EQ(r.witness, fixtures::spend({{"u", q(2)}}));
}

TEST(MinPromotionBudget, InfeasibleWithoutResponsiveAgents) {
  auto r = min_promotion_budget(fixtures::net1(), {}, set({"z"}));
  EXPECT_FALSE(r.feasible);
}

TEST(DecidePromotional, BudgetBoundary) {
  auto net = three_rules_network();
  EXPECT_TRUE(decide_promotional(net, set({"a", "c"}), set({"d"}), q(1)));
  EXPECT_FALSE(decide_promotional(net, set({"a", "c"}), set({"d"}), q(1, 2)));
  EXPECT_TRUE(decide_promotional(net, set({"a", "b"}), set({"a"}), q(0)));
}

TEST(MinBlockingBudget, Net1OpenInfimum) {
  auto r = min_blocking_budget(fixtures::net1(), set({"x"}), set({"z"}));
  ASSERT_TRUE(r.blockable);
  EXPECT_EQ(r.infimum, q(0));
  EXPECT_FALSE(r.attained);
  EXPECT_EQ(r.witness_set, set({"y"}));
}

TEST(MinBlockingBudget, SeedTargetsAreUnblockable) {
  EXPECT_FALSE(min_blocking_budget(fixtures::net1(), set({"x", "z"}), set({"z"})).blockable);
  EXPECT_FALSE(min_blocking_budget(three_rules_network(), set({"a"}), set({"a"})).blockable);
}

TEST(MinBlockingBudget, AttainedWhenUnspentDiffusionMisses) {
  auto r = min_blocking_budget(fixtures::net1(), set({"z"}), set({"x"}));
  ASSERT_TRUE(r.blockable);
  EXPECT_EQ(r.infimum, q(0));
  EXPECT_TRUE(r.attained);
  EXPECT_TRUE(r.witness_set.empty());
}

TEST(MinBlockingBudget, UnblockableWithoutNegativePropensity) {
  EXPECT_FALSE(min_blocking_budget(fixtures::net2(), set({"u"}), set({"v"})).blockable);
}

TEST(MinBlockingBudget, CostScalesWithPropensityAndExcessPressure) {
  // y receives 3 from x against θ = 1 and λ(y) = -1/2: spend must exceed (3 - 1) / (1/2) = 4.
  SocialNetwork net({"x", "y", "z"}, {{"x", "y", q(3)}, {"y", "z", q(1)}},
                    {{"x", q(0)}, {"y", q(-1, 2)}, {"z", q(0)}}, {{"x", q(1)}, {"y", q(1)}, {"z", q(1)}});
  auto r = min_blocking_budget(net, set({"x"}), set({"z"}));
  ASSERT_TRUE(r.blockable);
  EXPECT_EQ(r.infimum, q(4));
  EXPECT_FALSE(r.attained);
  EXPECT_FALSE(decide_preventive(net, set({"x"}), set({"z"}), q(9, 2)));
  EXPECT_TRUE(decide_preventive(net, set({"x"}), set({"z"}), q(4)));
}

TEST(MinBlockingBudget, CheapestOfTwoRoutes) {
  // Two parallel relays into t; each must be clamped, costs add up.
  SocialNetwork net({"s", "m1", "m2", "t"},
                    {{"s", "m1", q(2)}, {"s", "m2", q(3)}, {"m1", "t", q(1)}, {"m2", "t", q(1)}},
                    {{"s", q(0)}, {"m1", q(-1)}, {"m2", q(-1)}, {"t", q(0)}},
                    {{"s", q(1)}, {"m1", q(1)}, {"m2", q(1)}, {"t", q(1)}});
  auto r = min_blocking_budget(net, set({"s"}), set({"t"}));
  ASSERT_TRUE(r.blockable);
  EXPECT_EQ(r.infimum, q(3));
  EXPECT_FALSE(r.attained);
  EXPECT_EQ(r.witness_set, set({"m1", "m2"}));
  auto slow = oracle_blocking(net, set({"s"}), set({"t"}));
  EXPECT_EQ(slow.infimum, q(3));
}

TEST(DecidePreventive, Net1Boundary) {
  auto net = fixtures::net1();
  EXPECT_TRUE(decide_preventive(net, set({"x"}), set({"z"}), q(0)));
  EXPECT_FALSE(decide_preventive(net, set({"x"}), set({"z"}), q(1, 2)));
  for (const auto& p : {q(0), q(1), q(100)}) EXPECT_TRUE(decide_preventive(net, set({"x", "y"}), set({"y"}), p));
}

TEST(Oracles, ReproduceHandExamples) {
  auto net = three_rules_network();
  EXPECT_EQ(oracle_promotion(net, set({"a", "c"}), set({"d"})).min_budget, q(1));
  EXPECT_EQ(oracle_promotion(net, set({"b", "c"}), set({"d"})).min_budget, q(3));
  EXPECT_EQ(oracle_promotion(fixtures::net2(), {}, set({"u", "v"})).min_budget, q(2));
  auto b = oracle_blocking(fixtures::net1(), set({"x"}), set({"z"}));
  EXPECT_TRUE(b.blockable);
  EXPECT_EQ(b.infimum, q(0));
  EXPECT_FALSE(b.attained);
}

TEST(Oracles, SizeGuards) {
  std::vector<Agent> names;
  std::map<Agent, Rational> lambda, theta;
  for (int i = 0; i < 13; ++i) {
    names.push_back("n" + std::to_string(i));
    lambda[names.back()] = q(-1);
    theta[names.back()] = q(1);
  }
  SocialNetwork big(names, {}, lambda, theta);
  EXPECT_THROW(oracle_promotion(big, {}, {}), SizeGuardError);
  EXPECT_THROW(oracle_blocking(big, {}, set({"n0"})), SizeGuardError);
}

TEST(Oracles, PreventiveCanonicalGateOpenInfimum) {
  // {} |>1 {a} with P = {0, 1, 2}: at level 2 the closure of {} is empty, so
  // the label ({}, 2) gates a and blocking it costs anything above 2 - ε.
  HypothesisSet x{set({"a"}), {{AgentSet{}, q(1), set({"a"})}}};
  auto canon = build_preventive_canonical(x, {q(0), q(2)});
  auto fast = min_blocking_budget(canon.network, {}, set({"a"}));
  auto slow = oracle_blocking(canon.network, {}, set({"a"}));
  EXPECT_EQ(properties::show(fast), properties::show(slow));
  ASSERT_TRUE(fast.blockable);
  EXPECT_EQ(fast.infimum, q(2) - canon.epsilon);
  EXPECT_FALSE(fast.attained);
}

TEST(SolverProperties, PromotionMatchesOracle) {
  std::mt19937 rng(21);
  fixtures::NetworkShape shape;
  shape.max_agents = 6;
  for (int t = 0; t < 120; ++t) {
    auto net = fixtures::random_network(rng, shape);
    auto failure = properties::solvers_match_oracles(net, rng, 3, true, false);
    ASSERT_TRUE(failure.empty()) << failure;
  }
}

TEST(SolverProperties, BlockingMatchesOracle) {
  std::mt19937 rng(22);
  fixtures::NetworkShape shape;
  shape.negative_share = 0.6;
  shape.max_negative = 5;
  for (int t = 0; t < 150; ++t) {
    auto net = fixtures::random_network(rng, shape);
    auto failure = properties::solvers_match_oracles(net, rng, 3, false, true);
    ASSERT_TRUE(failure.empty()) << failure;
  }
}

TEST(SolverProperties, DecisionsFollowResults) {
  std::mt19937 rng(23);
  fixtures::NetworkShape shape;
  shape.max_agents = 6;
  shape.negative_share = 0.5;
  for (int t = 0; t < 80; ++t) {
    auto net = fixtures::random_network(rng, shape);
    auto a = fixtures::random_subset(rng, net.agents(), 0.3);
    auto b = fixtures::random_subset(rng, net.agents(), 0.4);
    auto promo = min_promotion_budget(net, a, b);
    auto block = min_blocking_budget(net, a, b);
    for (const auto& p : properties::budget_grid()) {
      EXPECT_EQ(decide_promotional(net, a, b, p), promo.feasible && promo.min_budget <= p);
      bool blocked = block.blockable && (block.infimum < p || (block.infimum == p && block.attained));
      EXPECT_EQ(decide_preventive(net, a, b, p), !blocked) << properties::describe(net);
    }
  }
}

TEST(SolverProperties, PreventiveTruthImpliesPromotionalTruth) {
  std::mt19937 rng(24);
  for (int t = 0; t < 80; ++t) {
    auto net = fixtures::random_network(rng, {1, 6, 0.4, 0.5, 1000});
    auto a = fixtures::random_subset(rng, net.agents(), 0.3);
    auto b = fixtures::random_subset(rng, net.agents(), 0.4);
    auto p = properties::random_budget(rng);
    if (decide_preventive(net, a, b, p)) {
      EXPECT_TRUE(decide_promotional(net, a, b, p)) << properties::describe(net);
    }
  }
}

TEST(SolverProperties, AxiomInstancesAreValid) {
  std::mt19937 rng(25);
  long nontrivial = 0;
  for (int t = 0; t < 60; ++t) {
    auto net = fixtures::random_network(rng, {1, 6, 0.4, 0.4, 1000});
    auto failure = properties::axiom_soundness(net, rng, 3, nontrivial);
    ASSERT_TRUE(failure.empty()) << failure;
  }
  EXPECT_GT(nontrivial, 0);
}
