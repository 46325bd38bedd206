#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "influence/logic.hpp"
#include "influence/network.hpp"

namespace influence {

/// Canonical network for promotional marketing built from atomic hypotheses.
///
/// Each hypothesis `A_i |>p_i B_i` gets a marketing-responsive gate alpha_i
/// (λ = 1, θ = p_i) and a relay beta_i that fires only once alpha_i and all
/// of A_i are active (θ = |A_i| + 1), then pushes every agent of B_i over
/// its threshold of 1.
struct PromoCanonical {
  SocialNetwork network;
  std::vector<Agent> alpha;  // alpha[i] belongs to hypothesis i + 1
  std::vector<Agent> beta;
  AgentSet base;
};

/// One (closure, budget) label of the preventive construction.
struct PrevLabel {
  AgentSet closure;
  Rational budget;
  Agent alpha;
  Agent beta;
};

/// Canonical network for preventive marketing built from atomic hypotheses
/// and a finite budget set P.
struct PrevCanonical {
  SocialNetwork network;
  std::vector<PrevLabel> labels;  // ordered by (budget, closure)
  Rational epsilon;
  std::vector<Rational> budgets;  // P, ascending
  AgentSet base;
};

namespace detail {

inline Agent fresh_name(const std::string& stem, const AgentSet& taken) {
  Agent name = stem;
  while (taken.contains(name)) name += "_";
  return name;
}

}  // namespace detail

inline PromoCanonical build_promotional_canonical(const HypothesisSet& x) {
  x.validate();
  PromoCanonical out;
  out.base = x.universe;

  AgentSet taken = x.universe;
  for (std::size_t i = 0; i < x.hypotheses.size(); ++i) {
    out.alpha.push_back(detail::fresh_name("alpha_" + std::to_string(i + 1), taken));
    taken.insert(out.alpha.back());
    out.beta.push_back(detail::fresh_name("beta_" + std::to_string(i + 1), taken));
    taken.insert(out.beta.back());
  }

  std::vector<SocialNetwork::Edge> edges;
  std::map<Agent, Rational> propensity;
  std::map<Agent, Rational> threshold;
  for (const auto& a : x.universe) {
    propensity[a] = 0;
    threshold[a] = 1;
  }
  for (std::size_t i = 0; i < x.hypotheses.size(); ++i) {
    const auto& h = x.hypotheses[i];
    const Agent& alpha = out.alpha[i];
    const Agent& beta = out.beta[i];
    propensity[alpha] = 1;
    propensity[beta] = 0;
    threshold[alpha] = h.budget;
    threshold[beta] = static_cast<long long>(h.left.size()) + 1;
    edges.push_back({alpha, beta, Rational(1)});
    for (const auto& a : h.left) edges.push_back({a, beta, Rational(1)});
    for (const auto& b : h.right) edges.push_back({beta, b, Rational(1)});
  }
  out.network = SocialNetwork(std::vector<Agent>(taken.begin(), taken.end()), edges, propensity, threshold);
  return out;
}

/// ε = min(1, g/2) for the smallest gap g between distinct budgets; 1 when
/// there is at most one budget. Distinct budgets then differ by more than ε.
inline Rational canonical_epsilon(const std::vector<Rational>& sorted_budgets) {
  Rational eps = 1;
  for (std::size_t i = 1; i < sorted_budgets.size(); ++i) {
    Rational half_gap = (sorted_budgets[i] - sorted_budgets[i - 1]) / 2;
    if (half_gap < eps) eps = half_gap;
  }
  return eps;
}

/// The hypothesis budgets are always added to `budgets`.
inline PrevCanonical build_preventive_canonical(const HypothesisSet& x, const std::vector<Rational>& budgets) {
  x.validate();
  if (x.universe.size() > 20) throw InputError("preventive canonical construction supports at most 20 base agents");

  PrevCanonical out;
  out.base = x.universe;
  std::set<Rational> p(budgets.begin(), budgets.end());
  for (const auto& h : x.hypotheses) p.insert(h.budget);
  for (const auto& v : p)
    if (v < 0) throw ValueError("negative budget " + to_string(v));
  out.budgets.assign(p.begin(), p.end());
  out.epsilon = canonical_epsilon(out.budgets);

  const std::vector<Agent> base(x.universe.begin(), x.universe.end());
  std::set<std::pair<Rational, AgentSet>> labels;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << base.size()); ++bits) {
    AgentSet subset;
    for (std::size_t k = 0; k < base.size(); ++k)
      if (bits >> k & 1U) subset.insert(base[k]);
    for (const auto& level : out.budgets) labels.emplace(level, prev_closure(x, subset, level));
  }

  AgentSet taken = x.universe;
  std::size_t k = 0;
  for (const auto& [level, closure] : labels) {
    ++k;
    PrevLabel label{closure, level, detail::fresh_name("alpha_" + std::to_string(k), taken), {}};
    taken.insert(label.alpha);
    label.beta = detail::fresh_name("beta_" + std::to_string(k), taken);
    taken.insert(label.beta);
    out.labels.push_back(std::move(label));
  }

  std::vector<SocialNetwork::Edge> edges;
  std::map<Agent, Rational> propensity;
  std::map<Agent, Rational> threshold;
  for (const auto& a : x.universe) {
    propensity[a] = 0;
    threshold[a] = 0;
  }
  for (const auto& label : out.labels) {
    propensity[label.alpha] = -1;
    propensity[label.beta] = 0;
    threshold[label.alpha] = out.epsilon - label.budget;
    threshold[label.beta] = 1;
    edges.push_back({label.alpha, label.beta, Rational(1)});
    for (const auto& a : set_difference(x.universe, label.closure)) {
      edges.push_back({a, label.beta, Rational(1)});
      edges.push_back({label.beta, a, Rational(1)});
      threshold[a] += 1;
    }
  }
  out.network = SocialNetwork(std::vector<Agent>(taken.begin(), taken.end()), edges, propensity, threshold);
  return out;
}

}  // namespace influence
