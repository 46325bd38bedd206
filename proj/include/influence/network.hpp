#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "influence/agent_set.hpp"
#include "influence/rational.hpp"

namespace influence {

/// Threshold model with marketing: a finite agent set, non-negative influence
/// weights, a propensity to marketing per agent and an adoption threshold per
/// agent. Propensities and thresholds may be negative.
///
/// Agents are stored in lexicographic order; index-based accessors use that
/// order and are what the solvers run on.
class SocialNetwork {
 public:
  struct Edge {
    Agent from;
    Agent to;
    Rational weight;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  SocialNetwork() = default;

  SocialNetwork(std::vector<Agent> agents, const std::vector<Edge>& influence,
                const std::map<Agent, Rational>& propensity,
                const std::map<Agent, Rational>& threshold) {
    std::sort(agents.begin(), agents.end());
    if (std::adjacent_find(agents.begin(), agents.end()) != agents.end())
      throw InputError("duplicate agent '" + *std::adjacent_find(agents.begin(), agents.end()) + "'");
    agents_ = std::move(agents);
    for (std::size_t i = 0; i < agents_.size(); ++i) index_.emplace(agents_[i], i);

    const std::size_t n = agents_.size();
    propensity_.assign(n, Rational(0));
    threshold_.assign(n, Rational(0));
    in_edges_.assign(n, {});
    out_edges_.assign(n, {});

    for (const auto& [agent, value] : propensity) propensity_[index_of(agent)] = value;
    for (const auto& [agent, value] : threshold) threshold_[index_of(agent)] = value;
    for (const auto& agent : agents_) {
      if (!propensity.contains(agent)) throw InputError("missing propensity for agent '" + agent + "'");
      if (!threshold.contains(agent)) throw InputError("missing threshold for agent '" + agent + "'");
    }

    std::map<std::pair<std::size_t, std::size_t>, Rational> weights;
    for (const auto& e : influence) {
      auto from = index_of(e.from);
      auto to = index_of(e.to);
      if (e.weight < 0)
        throw ValueError("negative influence " + to_string(e.weight) + " on edge " + e.from + " -> " + e.to);
      if (!weights.emplace(std::pair{from, to}, e.weight).second)
        throw InputError("duplicate edge " + e.from + " -> " + e.to);
    }
    for (const auto& [key, w] : weights) {
      if (w == 0) continue;
      out_edges_[key.first].push_back({key.second, w});
      in_edges_[key.second].push_back({key.first, w});
    }
  }

  std::size_t size() const { return agents_.size(); }
  const std::vector<Agent>& agents() const { return agents_; }
  AgentSet agent_set() const { return AgentSet(agents_.begin(), agents_.end()); }

  bool contains(const Agent& a) const { return index_.contains(a); }

  std::size_t index_of(const Agent& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) throw InputError("unknown agent '" + a + "'");
    return it->second;
  }

  const Agent& name(std::size_t i) const { return agents_[i]; }

  Rational weight(const Agent& from, const Agent& to) const {
    auto f = index_of(from);
    auto t = index_of(to);
    for (const auto& [src, w] : in_edges_[t])
      if (src == f) return w;
    return Rational(0);
  }
  const Rational& propensity(const Agent& a) const { return propensity_[index_of(a)]; }
  const Rational& threshold(const Agent& a) const { return threshold_[index_of(a)]; }

  const Rational& propensity(std::size_t i) const { return propensity_[i]; }
  const Rational& threshold(std::size_t i) const { return threshold_[i]; }

  /// Non-zero incoming influences of agent `b` as (source index, weight).
  const std::vector<std::pair<std::size_t, Rational>>& in_edges(std::size_t b) const { return in_edges_[b]; }
  const std::vector<std::pair<std::size_t, Rational>>& out_edges(std::size_t a) const { return out_edges_[a]; }

  /// Peer pressure on `b` from the agents in `active`.
  Rational pressure(std::size_t b, const AgentMask& active) const {
    Rational total = 0;
    for (const auto& [src, w] : in_edges_[b])
      if (active.test(src)) total += w;
    return total;
  }

  /// All non-zero edges in (from, to) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (const auto& [dst, w] : out_edges_[a]) out.push_back({agents_[a], agents_[dst], w});
    return out;
  }

  AgentMask mask(const AgentSet& set) const {
    AgentMask m(size());
    for (const auto& a : set) m.set(index_of(a));
    return m;
  }
  AgentMask empty_mask() const { return AgentMask(size()); }
  AgentMask full_mask() const { return ~AgentMask(size()); }

  AgentSet to_set(const AgentMask& m) const {
    AgentSet out;
    m.for_each([&](std::size_t i) { out.insert(agents_[i]); });
    return out;
  }

 private:
  std::vector<Agent> agents_;
  std::unordered_map<Agent, std::size_t> index_;
  std::vector<Rational> propensity_;
  std::vector<Rational> threshold_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> in_edges_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> out_edges_;
};

/// Non-negative marketing spend per agent; agents without an entry receive 0.
class SpendingFunction {
 public:
  SpendingFunction() = default;
  explicit SpendingFunction(const std::map<Agent, Rational>& spend) {
    for (const auto& [agent, value] : spend) set(agent, value);
  }

  Rational operator()(const Agent& a) const {
    auto it = spend_.find(a);
    return it == spend_.end() ? Rational(0) : it->second;
  }

  void set(const Agent& a, const Rational& value) {
    if (value < 0) throw ValueError("negative spend " + to_string(value) + " on agent '" + a + "'");
    if (value == 0)
      spend_.erase(a);
    else
      spend_[a] = value;
  }

  /// Non-zero entries only.
  const std::map<Agent, Rational>& entries() const { return spend_; }

  friend bool operator==(const SpendingFunction&, const SpendingFunction&) = default;

 private:
  std::map<Agent, Rational> spend_;
};

/// The diffusion chain from a seed: steps[0] is the seed, each entry contains
/// the previous one, and the last two entries are equal.
struct DiffusionTrace {
  std::vector<AgentSet> steps;
  SpendingFunction spending;

  const AgentSet& fixpoint() const { return steps.back(); }
};

inline std::string format_spend(const SpendingFunction& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [agent, value] : s.entries()) {
    if (!first) out += ", ";
    out += agent + ": " + to_string(value);
    first = false;
  }
  return out + "}";
}

namespace detail {

/// Spends as a dense vector over network indices; rejects unknown agents.
inline std::vector<Rational> dense_spend(const SocialNetwork& net, const SpendingFunction& s) {
  std::vector<Rational> out(net.size(), Rational(0));
  for (const auto& [agent, value] : s.entries()) out[net.index_of(agent)] = value;
  return out;
}

/// True when b's marketing plus peer pressure reaches its threshold.
inline bool activates(const SocialNetwork& net, std::size_t b, const AgentMask& active,
                      const std::vector<Rational>& spend) {
  Rational total = net.pressure(b, active);
  if (spend[b] != 0) total += net.propensity(b) * spend[b];
  return total >= net.threshold(b);
}

inline AgentMask step(const SocialNetwork& net, const AgentMask& active, const std::vector<Rational>& spend) {
  AgentMask next = active;
  for (std::size_t b = 0; b < net.size(); ++b)
    if (!active.test(b) && activates(net, b, active, spend)) next.set(b);
  return next;
}

inline AgentMask fixpoint(const SocialNetwork& net, AgentMask active, const std::vector<Rational>& spend) {
  for (;;) {
    AgentMask next = step(net, active, spend);
    if (next == active) return active;
    active = std::move(next);
  }
}

/// Least fixpoint from `active` with zero spend, where agents in `blocked`
/// never activate.
inline AgentMask fixpoint_excluding(const SocialNetwork& net, AgentMask active, const AgentMask& blocked) {
  for (;;) {
    AgentMask next = active;
    for (std::size_t b = 0; b < net.size(); ++b)
      if (!active.test(b) && !blocked.test(b) && net.pressure(b, active) >= net.threshold(b)) next.set(b);
    if (next == active) return active;
    active = std::move(next);
  }
}

}  // namespace detail

/// One diffusion step: `active` plus every agent whose marketing and peer
/// pressure reaches its threshold.
inline AgentSet diffuse_step(const SocialNetwork& net, const AgentSet& active, const SpendingFunction& s) {
  auto spend = detail::dense_spend(net, s);
  return net.to_set(detail::step(net, net.mask(active), spend));
}

/// Iterates diffusion from `seed` until it stabilises, keeping the whole chain.
inline DiffusionTrace diffuse_fixpoint(const SocialNetwork& net, const AgentSet& seed, const SpendingFunction& s) {
  auto spend = detail::dense_spend(net, s);
  DiffusionTrace trace;
  trace.spending = s;
  AgentMask current = net.mask(seed);
  trace.steps.push_back(net.to_set(current));
  for (;;) {
    AgentMask next = detail::step(net, current, spend);
    trace.steps.push_back(net.to_set(next));
    if (next == current) break;
    current = std::move(next);
  }
  return trace;
}

inline Rational spend_norm(const SpendingFunction& s) {
  Rational total = 0;
  for (const auto& [agent, value] : s.entries()) total += value;
  return total;
}

/// Sums the two campaigns on agents with non-negative propensity and drops
/// spending on the rest.
inline SpendingFunction combine_oplus(const SpendingFunction& s1, const SpendingFunction& s2,
                                      const SocialNetwork& net) {
  for (const auto* s : {&s1, &s2})
    for (const auto& entry : s->entries()) net.index_of(entry.first);
  SpendingFunction out;
  for (const auto& agent : net.agents())
    if (net.propensity(agent) >= 0) out.set(agent, s1(agent) + s2(agent));
  return out;
}

}  // namespace influence
