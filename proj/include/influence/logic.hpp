#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "influence/formula.hpp"

namespace influence {

/// Finite set of atomic hypotheses over a declared universe of agents.
struct HypothesisSet {
  AgentSet universe;
  std::vector<AtomicStatement> hypotheses;

  /// Throws InputError if a hypothesis mentions an agent outside the universe.
  void validate() const {
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
      const auto& h = hypotheses[i];
      for (const auto* side : {&h.left, &h.right})
        for (const auto& a : *side)
          if (!universe.contains(a))
            throw InputError("hypothesis " + std::to_string(i + 1) + " mentions agent '" + a + "' outside the universe");
      if (h.budget < 0) throw ValueError("hypothesis " + std::to_string(i + 1) + " has a negative budget");
    }
  }
};

enum class Rule { Hypothesis, Reflexivity, Augmentation, Transitivity, Monotonicity, Tautology, ModusPonens };

inline std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Hypothesis: return "hypothesis";
    case Rule::Reflexivity: return "reflexivity";
    case Rule::Augmentation: return "augmentation";
    case Rule::Transitivity: return "transitivity";
    case Rule::Monotonicity: return "monotonicity";
    case Rule::Tautology: return "tautology";
    case Rule::ModusPonens: return "mp";
  }
  return {};
}

inline Rule parse_rule(const std::string& name) {
  for (Rule r : {Rule::Hypothesis, Rule::Reflexivity, Rule::Augmentation, Rule::Transitivity, Rule::Monotonicity,
                 Rule::Tautology, Rule::ModusPonens})
    if (rule_name(r) == name) return r;
  throw InputError("unknown rule '" + name + "'");
}

/// One proof line. `refs` are 1-based line numbers of earlier lines (used by
/// modus ponens); `hyp` is the 1-based hypothesis index.
struct DerivationLine {
  Formula formula;
  Rule rule;
  std::vector<std::size_t> refs;
  std::size_t hyp = 0;
};

struct Derivation {
  SemanticsMode system = SemanticsMode::Promotional;
  std::vector<DerivationLine> lines;
};

/// Outcome of proof checking; `line` is 1-based and 0 when accepted.
struct CheckReport {
  bool accepted = true;
  std::size_t line = 0;
  std::string reason;

  explicit operator bool() const { return accepted; }
};

/// Largest number of distinct atoms a tautology line may mention.
inline constexpr std::size_t kMaxTautologyAtoms = 16;

namespace detail {

inline bool mentions_only(const Formula& f, const AgentSet& universe) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return is_subset(f.as_atom().left, universe) && is_subset(f.as_atom().right, universe);
    case Formula::Kind::Not: return mentions_only(f.lhs(), universe);
    case Formula::Kind::Implies: return mentions_only(f.lhs(), universe) && mentions_only(f.rhs(), universe);
  }
  return false;
}

inline void collect_atoms(const Formula& f, std::vector<AtomicStatement>& atoms) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (std::find(atoms.begin(), atoms.end(), f.as_atom()) == atoms.end()) atoms.push_back(f.as_atom());
      return;
    case Formula::Kind::Not: collect_atoms(f.lhs(), atoms); return;
    case Formula::Kind::Implies:
      collect_atoms(f.lhs(), atoms);
      collect_atoms(f.rhs(), atoms);
      return;
  }
}

inline bool truth_value(const Formula& f, const std::vector<AtomicStatement>& atoms, std::uint32_t row) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.as_atom());
      return (row >> (it - atoms.begin())) & 1U;
    }
    case Formula::Kind::Not: return !truth_value(f.lhs(), atoms, row);
    case Formula::Kind::Implies: return !truth_value(f.lhs(), atoms, row) || truth_value(f.rhs(), atoms, row);
  }
  return false;
}

/// Splits `a -> b` into atoms; nullopt unless both sides are atoms.
inline std::optional<std::pair<AtomicStatement, AtomicStatement>> atom_implication(const Formula& f) {
  if (!f.is_implication() || !f.lhs().is_atom() || !f.rhs().is_atom()) return std::nullopt;
  return std::pair{f.lhs().as_atom(), f.rhs().as_atom()};
}

inline std::string check_reflexivity(const Formula& f) {
  if (!f.is_atom()) return "reflexivity instance must be an atom";
  if (!is_subset(f.as_atom().right, f.as_atom().left)) return "Reflexivity side condition: right side not contained in left side";
  return {};
}

inline std::string check_augmentation(const Formula& f) {
  auto parts = atom_implication(f);
  if (!parts) return "augmentation instance must have the form A |>p B -> A,C |>p B,C";
  const auto& [premise, conclusion] = *parts;
  if (premise.budget != conclusion.budget) return "Augmentation side condition: budgets differ";
  // The smallest C that could work is what the conclusion adds on each side.
  AgentSet added = set_union(set_difference(conclusion.left, premise.left), set_difference(conclusion.right, premise.right));
  if (!is_subset(premise.left, conclusion.left) || !is_subset(premise.right, conclusion.right) ||
      !is_subset(added, conclusion.left) || !is_subset(added, conclusion.right))
    return "Augmentation side condition: conclusion is not A,C |>p B,C for any C";
  return {};
}

inline std::string check_transitivity(const Formula& f, SemanticsMode system) {
  const char* shape = "transitivity instance must have the form A |>p B -> (B |>q C -> A |>r C)";
  if (!f.is_implication() || !f.lhs().is_atom()) return shape;
  auto inner = atom_implication(f.rhs());
  if (!inner) return shape;
  const auto& first = f.lhs().as_atom();
  const auto& [second, conclusion] = *inner;
  if (first.right != second.left) return "Transitivity side condition: middle sets differ";
  if (conclusion.left != first.left || conclusion.right != second.right)
    return "Transitivity side condition: conclusion sets do not match";
  if (system == SemanticsMode::Promotional) {
    if (conclusion.budget != first.budget + second.budget)
      return "Transitivity side condition: conclusion budget must equal p+q";
  } else if (first.budget != second.budget || conclusion.budget != first.budget) {
    return "Transitivity side condition: budgets must all be equal";
  }
  return {};
}

inline std::string check_monotonicity(const Formula& f, SemanticsMode system) {
  if (system == SemanticsMode::Promotional) return "Monotonicity is not an axiom of the promotional system";
  auto parts = atom_implication(f);
  if (!parts) return "monotonicity instance must have the form A |>p B -> A |>q B";
  const auto& [premise, conclusion] = *parts;
  if (premise.left != conclusion.left || premise.right != conclusion.right)
    return "Monotonicity side condition: sets differ";
  if (!(conclusion.budget <= premise.budget)) return "Monotonicity side condition: requires q <= p";
  return {};
}

inline std::string check_tautology(const Formula& f) {
  std::vector<AtomicStatement> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > kMaxTautologyAtoms)
    return "tautology mentions " + std::to_string(atoms.size()) + " atoms; limit is " +
           std::to_string(kMaxTautologyAtoms);
  for (std::uint32_t row = 0; row < (std::uint32_t{1} << atoms.size()); ++row)
    if (!truth_value(f, atoms, row)) return "not a propositional tautology";
  return {};
}

}  // namespace detail

/// Validates every line against earlier lines only and reports the first
/// failure.
inline CheckReport check_derivation(const Derivation& d, const HypothesisSet& hypotheses) {
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& line = d.lines[i];
    const std::size_t number = i + 1;
    std::string reason;
    if (!detail::mentions_only(line.formula, hypotheses.universe)) {
      reason = "formula mentions an agent outside the universe";
    } else {
      switch (line.rule) {
        case Rule::Hypothesis:
          if (line.hyp < 1 || line.hyp > hypotheses.hypotheses.size())
            reason = "no hypothesis " + std::to_string(line.hyp);
          else if (!(line.formula.is_atom() && line.formula.as_atom() == hypotheses.hypotheses[line.hyp - 1]))
            reason = "formula differs from hypothesis " + std::to_string(line.hyp);
          break;
        case Rule::Reflexivity: reason = detail::check_reflexivity(line.formula); break;
        case Rule::Augmentation: reason = detail::check_augmentation(line.formula); break;
        case Rule::Transitivity: reason = detail::check_transitivity(line.formula, d.system); break;
        case Rule::Monotonicity: reason = detail::check_monotonicity(line.formula, d.system); break;
        case Rule::Tautology: reason = detail::check_tautology(line.formula); break;
        case Rule::ModusPonens: {
          if (line.refs.size() != 2) {
            reason = "modus ponens needs two references";
            break;
          }
          bool in_range = true;
          for (auto r : line.refs)
            if (r < 1 || r >= number) in_range = false;
          if (!in_range) {
            reason = "modus ponens may only reference earlier lines";
            break;
          }
          const Formula& premise = d.lines[line.refs[0] - 1].formula;
          const Formula& rule = d.lines[line.refs[1] - 1].formula;
          if (!(rule.is_implication() && rule.lhs() == premise && rule.rhs() == line.formula))
            reason = "modus ponens: line " + std::to_string(line.refs[1]) + " is not line " +
                     std::to_string(line.refs[0]) + " -> this formula";
          break;
        }
      }
    }
    if (!reason.empty()) return {false, number, reason};
  }
  return {};
}

namespace detail {

/// Dense indexing of a hypothesis universe.
class Universe {
 public:
  explicit Universe(const AgentSet& agents) : names_(agents.begin(), agents.end()) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }
  AgentMask mask(const AgentSet& set) const {
    AgentMask m(names_.size());
    for (const auto& a : set) {
      auto it = index_.find(a);
      if (it == index_.end()) throw InputError("agent '" + a + "' is outside the universe");
      m.set(it->second);
    }
    return m;
  }
  AgentSet to_set(const AgentMask& m) const {
    AgentSet out;
    m.for_each([&](std::size_t i) { out.insert(names_[i]); });
    return out;
  }

 private:
  std::vector<Agent> names_;
  std::unordered_map<Agent, std::size_t> index_;
};

struct PromoPlan {
  Rational cost;
  std::vector<std::size_t> fired;  // 0-based hypothesis indices in firing order
};

/// Uniform-cost search over subsets of the universe; hypothesis i fires from
/// S when its left side is inside S, costs its budget and adds its right side.
inline std::optional<PromoPlan> promo_plan(const HypothesisSet& x, const AgentSet& from, const AgentSet& to) {
  Universe u(x.universe);
  const AgentMask start = u.mask(from);
  const AgentMask goal = u.mask(to);
  std::vector<AgentMask> lefts, rights;
  for (const auto& h : x.hypotheses) {
    lefts.push_back(u.mask(h.left));
    rights.push_back(u.mask(h.right));
  }

  struct Node {
    Rational cost;
    std::optional<AgentMask> parent;
    std::size_t hyp = 0;
    bool closed = false;
  };
  std::unordered_map<AgentMask, Node, AgentMaskHash> nodes;
  struct Entry {
    Rational cost;
    AgentMask state;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.cost != b.cost) return b.cost < a.cost;
    return lex_less(b.state, a.state);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  nodes.emplace(start, Node{Rational(0), std::nullopt, 0, false});
  open.push({Rational(0), start});

  while (!open.empty()) {
    Entry top = open.top();
    open.pop();
    Node& node = nodes.at(top.state);
    if (node.closed || node.cost != top.cost) continue;
    node.closed = true;
    if (goal.subset_of(top.state)) {
      PromoPlan plan{top.cost, {}};
      AgentMask cursor = top.state;
      while (nodes.at(cursor).parent) {
        plan.fired.push_back(nodes.at(cursor).hyp);
        cursor = *nodes.at(cursor).parent;
      }
      std::reverse(plan.fired.begin(), plan.fired.end());
      return plan;
    }
    for (std::size_t i = 0; i < lefts.size(); ++i) {
      if (!lefts[i].subset_of(top.state) || rights[i].subset_of(top.state)) continue;
      AgentMask next = top.state | rights[i];
      Rational cost = top.cost + x.hypotheses[i].budget;
      auto it = nodes.find(next);
      if (it == nodes.end()) {
        nodes.emplace(next, Node{cost, top.state, i, false});
        open.push({cost, std::move(next)});
      } else if (!it->second.closed && cost < it->second.cost) {
        it->second = Node{cost, top.state, i, false};
        open.push({cost, std::move(next)});
      }
    }
  }
  return std::nullopt;
}

/// Hypotheses usable at level p fire until nothing changes; returns the
/// closure and the firings that added agents, in order.
inline std::pair<AgentSet, std::vector<std::size_t>> prev_plan(const HypothesisSet& x, const AgentSet& from,
                                                               const Rational& level) {
  AgentSet current = from;
  std::vector<std::size_t> fired;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < x.hypotheses.size(); ++i) {
      const auto& h = x.hypotheses[i];
      if (h.budget < level || !is_subset(h.left, current) || is_subset(h.right, current)) continue;
      current.insert(h.right.begin(), h.right.end());
      fired.push_back(i);
      changed = true;
    }
  }
  return {std::move(current), std::move(fired)};
}

/// Appends lines and hands back their 1-based numbers.
class ProofBuilder {
 public:
  explicit ProofBuilder(SemanticsMode system) { proof_.system = system; }

  std::size_t add(Formula f, Rule rule, std::vector<std::size_t> refs = {}, std::size_t hyp = 0) {
    proof_.lines.push_back({std::move(f), rule, std::move(refs), hyp});
    return proof_.lines.size();
  }
  const Formula& formula(std::size_t line) const { return proof_.lines[line - 1].formula; }

  /// Given `premise` and a line holding `premise -> X`, derives X.
  std::size_t mp(std::size_t premise, std::size_t rule) {
    return add(formula(rule).rhs(), Rule::ModusPonens, {premise, rule});
  }

  /// From lines proving A |>p B and B |>q C, derives A |>r C.
  std::size_t chain(std::size_t first, std::size_t second, const Rational& budget) {
    const auto& a = formula(first).as_atom();
    const auto& b = formula(second).as_atom();
    Formula conclusion = Formula::atom(a.left, budget, b.right);
    auto t = add(Formula::implies(formula(first), Formula::implies(formula(second), conclusion)), Rule::Transitivity);
    return mp(second, mp(first, t));
  }

  Derivation take() { return std::move(proof_); }

 private:
  Derivation proof_;
};

/// Derives `S |>level S ∪ right` from hypothesis i, with S ⊇ its left side.
inline std::size_t lift_hypothesis(ProofBuilder& pb, const HypothesisSet& x, std::size_t i, const AgentSet& state,
                                   const Rational& level) {
  const auto& h = x.hypotheses[i];
  std::size_t line = pb.add(Formula::atom(h), Rule::Hypothesis, {}, i + 1);
  if (h.budget != level) {
    auto m = pb.add(Formula::implies(Formula::atom(h), Formula::atom(h.left, level, h.right)), Rule::Monotonicity);
    line = pb.mp(line, m);
  }
  AgentSet next = set_union(state, h.right);
  if (h.left != state || h.right != next) {
    auto aug = pb.add(Formula::implies(pb.formula(line), Formula::atom(state, level, next)), Rule::Augmentation);
    line = pb.mp(line, aug);
  }
  return line;
}

}  // namespace detail

/// Least q with X ⊢ from |>q to, or nullopt if no budget suffices.
inline std::optional<Rational> promo_min_derivation_budget(const HypothesisSet& x, const AgentSet& from,
                                                           const AgentSet& to) {
  auto plan = detail::promo_plan(x, from, to);
  if (!plan) return std::nullopt;
  return plan->cost;
}

/// Agents derivable from `from` at level `level` in the preventive system.
inline AgentSet prev_closure(const HypothesisSet& x, const AgentSet& from, const Rational& level) {
  detail::Universe(x.universe).mask(from);
  return detail::prev_plan(x, from, level).first;
}

inline bool decide_derivable(SemanticsMode system, const HypothesisSet& x, const AgentSet& from, const AgentSet& to,
                             const Rational& budget) {
  if (system == SemanticsMode::Promotional) {
    auto q = promo_min_derivation_budget(x, from, to);
    return q && *q <= budget;
  }
  detail::Universe(x.universe).mask(to);
  return is_subset(to, prev_closure(x, from, budget));
}

/// A derivation of `from |>budget to` from X that check_derivation accepts,
/// or nullopt when the atom is not derivable.
inline std::optional<Derivation> explain_derivation(SemanticsMode system, const HypothesisSet& x,
                                                    const AgentSet& from, const AgentSet& to, const Rational& budget) {
  detail::ProofBuilder pb(system);
  if (is_subset(to, from)) {
    pb.add(Formula::atom(from, budget, to), Rule::Reflexivity);
    return pb.take();
  }

  std::vector<std::size_t> fired;
  Rational level = 0;
  if (system == SemanticsMode::Promotional) {
    auto plan = detail::promo_plan(x, from, to);
    if (!plan || plan->cost > budget) return std::nullopt;
    fired = std::move(plan->fired);
  } else {
    auto [closure, order] = detail::prev_plan(x, from, budget);
    if (!is_subset(to, closure)) return std::nullopt;
    fired = std::move(order);
    level = budget;
  }

  AgentSet state = from;
  std::optional<std::size_t> current;
  Rational spent = 0;
  for (std::size_t i : fired) {
    const Rational step_budget = system == SemanticsMode::Promotional ? x.hypotheses[i].budget : level;
    std::size_t step = detail::lift_hypothesis(pb, x, i, state, step_budget);
    state = set_union(state, x.hypotheses[i].right);
    if (system == SemanticsMode::Promotional) spent += step_budget;
    current = current ? pb.chain(*current, step, system == SemanticsMode::Promotional ? spent : level) : step;
    if (is_subset(to, state)) break;
  }

  const Rational tail = system == SemanticsMode::Promotional ? Rational(0) : level;
  if (state != to) {
    auto narrow = pb.add(Formula::atom(state, tail, to), Rule::Reflexivity);
    current = pb.chain(*current, narrow, system == SemanticsMode::Promotional ? spent : level);
  }
  if (system == SemanticsMode::Promotional && spent < budget) {
    // Pad the budget: from |>(budget - spent) from, then transitivity.
    auto pad = pb.add(Formula::atom(from, budget - spent, from), Rule::Reflexivity);
    current = pb.chain(pad, *current, budget);
  }
  return pb.take();
}

}  // namespace influence
