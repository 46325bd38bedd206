#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "influence/influence.hpp"

namespace fixtures {

using namespace influence;

inline AgentSet set(std::initializer_list<const char*> names) {
  AgentSet out;
  for (const char* n : names) out.insert(n);
  return out;
}

inline Rational q(long long num, long long den = 1) { return rational(num, den); }

/// {a,c |>1 d; b,c |>2 a; a,b |>3 c} over {a,b,c,d}.
inline HypothesisSet three_rules() {
  HypothesisSet x;
  x.universe = set({"a", "b", "c", "d"});
  x.hypotheses = {{set({"a", "c"}), q(1), set({"d"})},
                  {set({"b", "c"}), q(2), set({"a"})},
                  {set({"a", "b"}), q(3), set({"c"})}};
  return x;
}

/// x -> y -> z with unit weights, y pushed away by marketing (λ = -1), θ = 1.
inline SocialNetwork net1() {
  return SocialNetwork({"x", "y", "z"}, {{"x", "y", q(1)}, {"y", "z", q(1)}},
                       {{"x", q(0)}, {"y", q(-1)}, {"z", q(0)}}, {{"x", q(1)}, {"y", q(1)}, {"z", q(1)}});
}

/// u -> v with weight 2; λ(u) = 2, θ(u) = 4, θ(v) = 2.
inline SocialNetwork net2() {
  return SocialNetwork({"u", "v"}, {{"u", "v", q(2)}}, {{"u", q(2)}, {"v", q(0)}}, {{"u", q(4)}, {"v", q(2)}});
}

inline SpendingFunction spend(std::initializer_list<std::pair<const char*, Rational>> entries) {
  SpendingFunction s;
  for (const auto& [a, v] : entries) s.set(a, v);
  return s;
}

// ---- random generation -------------------------------------------------

/// Small rational k/d with d in {1,2,4} and k in [lo*d, hi*d].
inline Rational random_rational(std::mt19937& rng, int lo, int hi) {
  static const int dens[] = {1, 2, 4};
  int d = dens[std::uniform_int_distribution<int>(0, 2)(rng)];
  int k = std::uniform_int_distribution<int>(lo * d, hi * d)(rng);
  return rational(k, d);
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct NetworkShape {
  int min_agents = 1;
  int max_agents = 8;
  double edge_density = 0.4;
  double negative_share = 0.3;  // chance that an agent gets λ < 0
  int max_negative = 1000;
};

inline std::vector<Agent> agent_names(int n) {
  std::vector<Agent> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

inline SocialNetwork random_network(std::mt19937& rng, const NetworkShape& shape = {}) {
  int n = std::uniform_int_distribution<int>(shape.min_agents, shape.max_agents)(rng);
  auto names = agent_names(n);
  std::vector<SocialNetwork::Edge> edges;
  for (const auto& from : names)
    for (const auto& to : names)
      if (coin(rng, shape.edge_density)) edges.push_back({from, to, random_rational(rng, 0, 3)});
  std::map<Agent, Rational> propensity, threshold;
  int negatives = 0;
  for (const auto& a : names) {
    if (negatives < shape.max_negative && coin(rng, shape.negative_share)) {
      propensity[a] = -random_rational(rng, 1, 2);
      ++negatives;
    } else {
      propensity[a] = coin(rng, 0.25) ? Rational(0) : random_rational(rng, 0, 2);
    }
    threshold[a] = random_rational(rng, -1, 4);
  }
  return SocialNetwork(names, edges, propensity, threshold);
}

inline AgentSet random_subset(std::mt19937& rng, const std::vector<Agent>& from, double p = 0.35) {
  AgentSet out;
  for (const auto& a : from)
    if (coin(rng, p)) out.insert(a);
  return out;
}

inline SpendingFunction random_spend(std::mt19937& rng, const SocialNetwork& net, double p = 0.4) {
  SpendingFunction s;
  for (const auto& a : net.agents())
    if (coin(rng, p)) s.set(a, random_rational(rng, 0, 3));
  return s;
}

/// Atomic hypotheses over {a, ..} with budgets drawn from {0, 1/2, 1, 2, 3}.
inline HypothesisSet random_hypotheses(std::mt19937& rng, int max_agents = 4, int max_hypotheses = 3) {
  static const Rational grid[] = {q(0), q(1, 2), q(1), q(2), q(3)};
  HypothesisSet x;
  auto names = agent_names(std::uniform_int_distribution<int>(1, max_agents)(rng));
  x.universe = AgentSet(names.begin(), names.end());
  int m = std::uniform_int_distribution<int>(0, max_hypotheses)(rng);
  for (int i = 0; i < m; ++i) {
    AtomicStatement h{random_subset(rng, names, 0.4), grid[std::uniform_int_distribution<int>(0, 4)(rng)],
                      random_subset(rng, names, 0.4)};
    if (h.right.empty()) h.right.insert(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    x.hypotheses.push_back(std::move(h));
  }
  return x;
}

/// Every subset of a small universe, in bitmask order.
inline std::vector<AgentSet> all_subsets(const AgentSet& universe) {
  std::vector<Agent> names(universe.begin(), universe.end());
  std::vector<AgentSet> out;
  for (unsigned bits = 0; bits < (1U << names.size()); ++bits) {
    AgentSet s;
    for (std::size_t k = 0; k < names.size(); ++k)
      if (bits >> k & 1U) s.insert(names[k]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fixtures
