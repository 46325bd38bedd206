#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "influence/network.hpp"

namespace influence {

/// Cheapest campaign that makes `A` bring every agent of `B` on board.
struct PromotionResult {
  bool feasible = false;
  Rational min_budget;          // meaningful only when feasible
  SpendingFunction witness;     // spends only on agents with positive propensity
};

/// Cheapest preventive campaign that keeps some agent of `B` out of the
/// diffusion from `A`.
///
/// Blocking an over-pressured agent requires its activation inequality to
/// fail strictly, so per-agent costs are open bounds: `infimum` is the
/// greatest lower bound of blocking budgets and `attained` says whether a
/// campaign of exactly that budget blocks.
struct BlockingResult {
  bool blockable = false;
  Rational infimum;
  bool attained = false;
  AgentSet witness_set;  // agents with negative propensity pushed below threshold
};

/// Thrown when an exhaustive oracle is asked to run beyond its size limit.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

inline bool mask_subset_ordered_less(const Rational& c1, const AgentMask& m1, const Rational& c2,
                                     const AgentMask& m2) {
  if (c1 != c2) return c1 < c2;
  return lex_less(m1, m2);
}

}  // namespace detail

/// Exact minimum promotion budget by uniform-cost search over active sets.
///
/// States are zero-spend-closed active sets. Buying agent b from state S
/// costs (θ(b) - pressure_S(b)) / λ(b) and only agents with λ > 0 are ever
/// bought. States are expanded in (cost, lexicographic set) order, so the
/// reported witness is deterministic.
inline PromotionResult min_promotion_budget(const SocialNetwork& net, const AgentSet& from, const AgentSet& to) {
  const AgentMask target = net.mask(to);
  const AgentMask start = detail::fixpoint_excluding(net, net.mask(from), net.empty_mask());

  PromotionResult result;
  if (target.subset_of(start)) {
    result.feasible = true;
    result.min_budget = 0;
    return result;
  }

  AgentMask promotable = net.empty_mask();
  for (std::size_t b = 0; b < net.size(); ++b)
    if (net.propensity(b) > 0) promotable.set(b);
  if (!target.subset_of(detail::fixpoint_excluding(net, start | promotable, net.empty_mask()))) return result;

  struct Node {
    Rational cost;
    std::optional<AgentMask> parent;
    std::size_t bought = 0;
    Rational spend;
    bool closed = false;
  };
  std::unordered_map<AgentMask, Node, AgentMaskHash> nodes;

  struct Entry {
    Rational cost;
    AgentMask state;
  };
  auto worse = [](const Entry& x, const Entry& y) {
    return detail::mask_subset_ordered_less(y.cost, y.state, x.cost, x.state);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

  nodes.emplace(start, Node{Rational(0), std::nullopt, 0, Rational(0), false});
  open.push({Rational(0), start});

  while (!open.empty()) {
    Entry top = open.top();
    open.pop();
    Node& node = nodes.at(top.state);
    if (node.closed || node.cost != top.cost) continue;
    node.closed = true;

    if (target.subset_of(top.state)) {
      result.feasible = true;
      result.min_budget = top.cost;
      AgentMask cursor = top.state;
      while (nodes.at(cursor).parent) {
        const Node& n = nodes.at(cursor);
        result.witness.set(net.name(n.bought), n.spend);
        cursor = *n.parent;
      }
      return result;
    }

    for (std::size_t b = 0; b < net.size(); ++b) {
      if (top.state.test(b) || !promotable.test(b)) continue;
      Rational spend = (net.threshold(b) - net.pressure(b, top.state)) / net.propensity(b);
      AgentMask next = top.state;
      next.set(b);
      next = detail::fixpoint_excluding(net, std::move(next), net.empty_mask());
      Rational cost = top.cost + spend;
      auto it = nodes.find(next);
      if (it == nodes.end()) {
        nodes.emplace(next, Node{cost, top.state, b, spend, false});
        open.push({cost, std::move(next)});
      } else if (!it->second.closed && cost < it->second.cost) {
        it->second = Node{cost, top.state, b, spend, false};
        open.push({cost, std::move(next)});
      }
    }
  }
  return result;
}

/// True iff some campaign of total at most `budget` brings all of `to` on board.
inline bool decide_promotional(const SocialNetwork& net, const AgentSet& from, const AgentSet& to,
                               const Rational& budget) {
  auto r = min_promotion_budget(net, from, to);
  return r.feasible && r.min_budget <= budget;
}

namespace detail {

/// Branch-and-bound over the set U of agents kept inactive.
///
/// A choice of U is consistent when it avoids the seed and every member
/// with λ ≥ 0 faces pressure below its threshold from the complement F.
/// Its cost is the sum over members d with λ(d) < 0 and pressure ≥ θ(d) of
/// (pressure − θ)/|λ|, each an open bound. Every valid F contains the
/// fixpoint reached when all negative-propensity agents are held out, so
/// pressures from that fixpoint give a lower bound that only grows with U.
class BlockingSearch {
 public:
  BlockingSearch(const SocialNetwork& net, const AgentMask& seed, std::optional<Rational> cap)
      : net_(net), cap_(std::move(cap)) {
    negative_ = net.empty_mask();
    for (std::size_t b = 0; b < net.size(); ++b)
      if (net.propensity(b) < 0) negative_.set(b);
    floor_ = fixpoint_excluding(net, seed, negative_);
    lower_.assign(net.size(), Rational(0));
    negative_.for_each([&](std::size_t d) {
      Rational excess = net.pressure(d, floor_) - net.threshold(d);
      if (excess > 0) lower_[d] = excess / -net.propensity(d);
    });
  }

  const AgentMask& floor() const { return floor_; }

  /// Explores consistent sets containing `target`.
  void run_from(std::size_t target) {
    AgentMask u = net_.empty_mask();
    u.set(target);
    visit(u, lower_[target]);
  }

  bool found() const { return best_.has_value(); }
  bool stopped() const { return stopped_; }
  const Rational& best_cost() const { return best_->cost; }
  const AgentMask& best_witness() const { return best_->witness; }

 private:
  struct Candidate {
    Rational cost;
    AgentMask witness;
  };

  bool pruned(const Rational& bound) const {
    if (cap_ && bound >= *cap_) return true;
    return best_ && bound > best_->cost;
  }

  void visit(const AgentMask& u, const Rational& bound) {
    if (stopped_ || pruned(bound) || !seen_.insert(u).second) return;

    const AgentMask active = ~u;
    Rational cost = 0;
    AgentMask witness = net_.empty_mask();
    std::optional<std::size_t> violated;
    std::vector<std::size_t> reducible;
    u.for_each([&](std::size_t x) {
      Rational excess = net_.pressure(x, active) - net_.threshold(x);
      if (excess < 0) return;
      if (!negative_.test(x)) {
        if (!violated) violated = x;
        return;
      }
      witness.set(x);
      cost += excess / -net_.propensity(x);
      if (excess > 0) reducible.push_back(x);
    });

    if (!violated) {
      if (!best_ || mask_subset_ordered_less(cost, witness, best_->cost, best_->witness)) {
        if (!cap_ || cost < *cap_) best_ = Candidate{cost, witness};
      }
      if (cap_ && best_) {
        stopped_ = true;
        return;
      }
      for (std::size_t d : reducible) expand_in_neighbours(u, bound, d);
    } else {
      expand_in_neighbours(u, bound, *violated);
    }
  }

  void expand_in_neighbours(const AgentMask& u, const Rational& bound, std::size_t x) {
    for (const auto& [src, w] : net_.in_edges(x)) {
      if (u.test(src) || floor_.test(src)) continue;
      AgentMask next = u;
      next.set(src);
      visit(next, bound + lower_[src]);
      if (stopped_) return;
    }
  }

  const SocialNetwork& net_;
  std::optional<Rational> cap_;
  AgentMask negative_;
  AgentMask floor_;
  std::vector<Rational> lower_;
  std::optional<Candidate> best_;
  std::unordered_set<AgentMask, AgentMaskHash> seen_;
  bool stopped_ = false;
};

/// With `cap`, stops at the first blocking configuration cheaper than it.
inline BlockingResult blocking(const SocialNetwork& net, const AgentSet& from, const AgentSet& to,
                               std::optional<Rational> cap) {
  const AgentMask seed = net.mask(from);
  const AgentMask target = net.mask(to);
  BlockingResult result;
  if (target.subset_of(seed)) return result;

  if (!target.subset_of(fixpoint_excluding(net, seed, net.empty_mask()))) {
    result.blockable = true;
    result.infimum = 0;
    result.attained = true;
    return result;
  }

  BlockingSearch search(net, seed, std::move(cap));
  for (std::size_t t : target.indices()) {
    if (search.floor().test(t)) continue;
    search.run_from(t);
    if (search.stopped()) break;
  }
  if (search.found()) {
    result.blockable = true;
    result.infimum = search.best_cost();
    result.attained = false;
    result.witness_set = net.to_set(search.best_witness());
  }
  return result;
}

}  // namespace detail

/// Exact infimum of preventive budgets that stop `from` from influencing all
/// of `to`, with attainment.
inline BlockingResult min_blocking_budget(const SocialNetwork& net, const AgentSet& from, const AgentSet& to) {
  return detail::blocking(net, from, to, std::nullopt);
}

/// True iff every preventive campaign of total at most `budget` still lets
/// `from` bring all of `to` on board.
inline bool decide_preventive(const SocialNetwork& net, const AgentSet& from, const AgentSet& to,
                              const Rational& budget) {
  auto r = detail::blocking(net, from, to, budget);
  if (!r.blockable) return true;
  if (r.infimum < budget) return false;
  return !(r.infimum == budget && r.attained);
}

/// Exhaustive oracle for min_promotion_budget: tries every purchase order of
/// positive-propensity agents, pricing each purchase at its marginal cost and
/// replaying the accumulated campaign from scratch.
inline PromotionResult oracle_promotion(const SocialNetwork& net, const AgentSet& from, const AgentSet& to) {
  if (net.size() > 10) throw SizeGuardError("oracle_promotion supports at most 10 agents");

  std::vector<Agent> promotable;
  for (const auto& a : net.agents())
    if (net.propensity(a) > 0) promotable.push_back(a);

  PromotionResult best;
  std::function<void(const SpendingFunction&)> explore = [&](const SpendingFunction& spend) {
    Rational norm = spend_norm(spend);
    if (best.feasible && norm > best.min_budget) return;
    AgentSet reached = diffuse_fixpoint(net, from, spend).fixpoint();
    if (is_subset(to, reached)) {
      if (!best.feasible || norm < best.min_budget) {
        best.feasible = true;
        best.min_budget = norm;
        best.witness = spend;
      }
      return;
    }
    for (const auto& b : promotable) {
      if (reached.contains(b)) continue;
      Rational pressure = 0;
      for (const auto& a : reached) pressure += net.weight(a, b);
      SpendingFunction next = spend;
      next.set(b, spend(b) + (net.threshold(b) - pressure) / net.propensity(b));
      explore(next);
    }
  };
  explore(SpendingFunction{});
  return best;
}

/// Exhaustive oracle for min_blocking_budget: enumerates every set D of
/// negative-propensity agents to hold out, prices each member at its
/// breakpoint against the resulting fixpoint, and classifies strictness by
/// replaying the campaign at the breakpoint and slightly above it.
inline BlockingResult oracle_blocking(const SocialNetwork& net, const AgentSet& from, const AgentSet& to) {
  std::vector<Agent> negative;
  for (const auto& a : net.agents())
    if (net.propensity(a) < 0) negative.push_back(a);
  if (negative.size() > 12) throw SizeGuardError("oracle_blocking supports at most 12 negative-propensity agents");

  const Rational delta = rational(1, 1024);
  auto pressure_from = [&](const AgentSet& active, const Agent& b) {
    Rational p = 0;
    for (const auto& a : active) p += net.weight(a, b);
    return p;
  };

  BlockingResult best;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << negative.size()); ++bits) {
    AgentSet held;
    SpendingFunction lock;
    for (std::size_t k = 0; k < negative.size(); ++k) {
      if (!(bits >> k & 1U)) continue;
      const Agent& d = negative[k];
      held.insert(d);
      Rational max_pressure = pressure_from(net.agent_set(), d);
      Rational need = (max_pressure - net.threshold(d)) / -net.propensity(d);
      lock.set(d, (need > 0 ? need : Rational(0)) + 1);
    }
    AgentSet reached = diffuse_fixpoint(net, from, lock).fixpoint();
    if (is_subset(to, reached)) continue;

    SpendingFunction at_breakpoint;
    SpendingFunction above_breakpoint;
    AgentSet pressured;
    for (const auto& d : held) {
      Rational excess = pressure_from(reached, d) - net.threshold(d);
      Rational price = excess > 0 ? Rational(excess / -net.propensity(d)) : Rational(0);
      if (excess >= 0) pressured.insert(d);
      at_breakpoint.set(d, price);
      above_breakpoint.set(d, price + delta);
    }
    if (is_subset(to, diffuse_fixpoint(net, from, above_breakpoint).fixpoint()))
      throw std::logic_error("oracle_blocking: probe above breakpoint failed to block");
    Rational cost = spend_norm(at_breakpoint);
    bool blocks_exactly = !is_subset(to, diffuse_fixpoint(net, from, at_breakpoint).fixpoint());

    if (!best.blockable || cost < best.infimum) {
      best.blockable = true;
      best.infimum = cost;
      best.attained = blocks_exactly;
      best.witness_set = blocks_exactly ? AgentSet{} : pressured;
    } else if (cost == best.infimum && blocks_exactly && !best.attained) {
      best.attained = true;
      best.witness_set = {};
    }
  }
  return best;
}

}  // namespace influence
