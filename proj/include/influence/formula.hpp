#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "influence/agent_set.hpp"
#include "influence/rational.hpp"
#include "influence/solver.hpp"

namespace influence {

/// Atomic influence statement `left |>budget right`.
struct AtomicStatement {
  AgentSet left;
  Rational budget;
  AgentSet right;

  friend bool operator==(const AtomicStatement&, const AtomicStatement&) = default;
  friend auto operator<=>(const AtomicStatement& x, const AtomicStatement& y) {
    if (auto c = x.left <=> y.left; c != 0) return c;
    if (x.budget != y.budget) return x.budget < y.budget ? std::strong_ordering::less : std::strong_ordering::greater;
    return x.right <=> y.right;
  }
};

enum class SemanticsMode { Promotional, Preventive };

/// Immutable formula over influence atoms with negation and implication.
/// Subtrees are shared, so copies are cheap.
class Formula {
 public:
  enum class Kind { Atom, Not, Implies };

  static Formula atom(AgentSet left, Rational budget, AgentSet right) {
    if (budget < 0) throw ValueError("negative budget " + to_string(budget));
    return Formula(Kind::Atom, AtomicStatement{std::move(left), std::move(budget), std::move(right)}, nullptr, nullptr);
  }
  static Formula atom(AtomicStatement a) { return atom(std::move(a.left), std::move(a.budget), std::move(a.right)); }
  static Formula negation(const Formula& f) {
    return Formula(Kind::Not, {}, std::make_shared<const Formula>(f), nullptr);
  }
  static Formula implies(const Formula& lhs, const Formula& rhs) {
    return Formula(Kind::Implies, {}, std::make_shared<const Formula>(lhs), std::make_shared<const Formula>(rhs));
  }

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::Atom; }
  bool is_implication() const { return kind_ == Kind::Implies; }
  const AtomicStatement& as_atom() const { return atom_; }
  /// Operand of a negation, or antecedent of an implication.
  const Formula& lhs() const { return *lhs_; }
  const Formula& rhs() const { return *rhs_; }

  friend bool operator==(const Formula& x, const Formula& y) {
    if (x.kind_ != y.kind_) return false;
    switch (x.kind_) {
      case Kind::Atom: return x.atom_ == y.atom_;
      case Kind::Not: return *x.lhs_ == *y.lhs_;
      case Kind::Implies: return *x.lhs_ == *y.lhs_ && *x.rhs_ == *y.rhs_;
    }
    return false;
  }

 private:
  Formula(Kind kind, AtomicStatement atom, std::shared_ptr<const Formula> lhs, std::shared_ptr<const Formula> rhs)
      : kind_(kind), atom_(std::move(atom)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Kind kind_;
  AtomicStatement atom_;
  std::shared_ptr<const Formula> lhs_;
  std::shared_ptr<const Formula> rhs_;
};

/// Syntax error with the byte offset at which parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_formula() {
    Formula f = parse_implies();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

  AgentSet parse_set_only() {
    AgentSet s = parse_set();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return s;
  }

  AtomicStatement parse_atom_only() {
    AtomicStatement a = parse_atom();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return a;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) throw ParseError("expected '" + std::string(token) + "'", pos_);
  }
  bool peek_ident_start() const {
    return pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
  }

  Formula parse_implies() {
    Formula lhs = parse_unary();
    if (accept("->")) return Formula::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_unary() {
    if (accept("!")) return Formula::negation(parse_unary());
    if (accept("(")) {
      Formula inner = parse_implies();
      expect(")");
      return inner;
    }
    return Formula::atom(parse_atom());
  }

  AtomicStatement parse_atom() {
    AtomicStatement a;
    a.left = parse_set();
    expect("|>");
    a.budget = parse_number();
    a.right = parse_set();
    return a;
  }

  AgentSet parse_set() {
    skip_ws();
    AgentSet out;
    if (accept("{")) {
      if (accept("}")) return out;
      do {
        out.insert(parse_ident());
      } while (accept(","));
      expect("}");
      return out;
    }
    out.insert(parse_ident());
    return out;
  }

  std::string parse_ident() {
    skip_ws();
    if (!peek_ident_start()) throw ParseError("expected agent identifier", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational parse_number() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = pos_ < text_.size() && text_[pos_] == '-';
    if (negative) ++pos_;
    auto digits = [&] {
      std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > from;
    };
    bool whole = digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      if (!whole) throw ParseError("expected budget", start);
      ++pos_;
      if (!digits()) throw ParseError("expected denominator", pos_);
    } else if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (!digits()) throw ParseError("expected digits after '.'", pos_);
    } else if (!whole) {
      throw ParseError("expected budget", start);
    }
    Rational value = parse_rational(text_.substr(start, pos_ - start));
    if (value < 0) throw ValueError("negative budget " + to_string(value) + " at position " + std::to_string(start));
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string format_compact_set(const AgentSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : set) {
    if (!first) out += ",";
    out += a;
    first = false;
  }
  return out + "}";
}

}  // namespace detail

/// Grammar:
///   formula := unary ( "->" formula )?
///   unary   := "!" unary | "(" formula ")" | set "|>" number set
///   set     := "{" ( ident ("," ident)* )? "}" | ident
/// `->` associates to the right and `!` binds tighter than `->`.
inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse_formula(); }

/// A single atom `SET |>number SET`.
inline AtomicStatement parse_atom(std::string_view text) { return detail::FormulaParser(text).parse_atom_only(); }

/// `{a, b}` or a bare identifier.
inline AgentSet parse_agent_set(std::string_view text) { return detail::FormulaParser(text).parse_set_only(); }

inline std::string print_atom(const AtomicStatement& a) {
  return detail::format_compact_set(a.left) + " |>" + to_string(a.budget) + " " + detail::format_compact_set(a.right);
}

/// Canonical rendering; `parse_formula(print_formula(f)) == f`.
inline std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return print_atom(f.as_atom());
    case Formula::Kind::Not: {
      const Formula& inner = f.lhs();
      return inner.is_implication() ? "!(" + print_formula(inner) + ")" : "!" + print_formula(inner);
    }
    case Formula::Kind::Implies: {
      const Formula& lhs = f.lhs();
      std::string left = lhs.is_implication() ? "(" + print_formula(lhs) + ")" : print_formula(lhs);
      return left + " -> " + print_formula(f.rhs());
    }
  }
  return {};
}

inline bool evaluate_atom(const SocialNetwork& net, const AtomicStatement& a, SemanticsMode mode) {
  for (const auto& agent : a.left) net.index_of(agent);
  for (const auto& agent : a.right) net.index_of(agent);
  return mode == SemanticsMode::Promotional ? decide_promotional(net, a.left, a.right, a.budget)
                                            : decide_preventive(net, a.left, a.right, a.budget);
}

namespace detail {

inline void check_agents(const SocialNetwork& net, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& agent : f.as_atom().left) net.index_of(agent);
      for (const auto& agent : f.as_atom().right) net.index_of(agent);
      return;
    case Formula::Kind::Not: check_agents(net, f.lhs()); return;
    case Formula::Kind::Implies:
      check_agents(net, f.lhs());
      check_agents(net, f.rhs());
      return;
  }
}

inline bool evaluate_checked(const SocialNetwork& net, const Formula& f, SemanticsMode mode) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return evaluate_atom(net, f.as_atom(), mode);
    case Formula::Kind::Not: return !evaluate_checked(net, f.lhs(), mode);
    case Formula::Kind::Implies: return !evaluate_checked(net, f.lhs(), mode) || evaluate_checked(net, f.rhs(), mode);
  }
  return false;
}

}  // namespace detail

/// Throws InputError for an unknown agent anywhere in `f`, even in a
/// subformula that short-circuiting would skip.
inline bool evaluate(const SocialNetwork& net, const Formula& f, SemanticsMode mode) {
  detail::check_agents(net, f);
  return detail::evaluate_checked(net, f, mode);
}

}  // namespace influence
