#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "influence/influence.hpp"

namespace influence::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit status contract: 0 true/success, 1 false, 2 error.
enum Exit : int { kTrue = 0, kFalse = 1, kError = 2 };

namespace detail {

inline AgentSet parse_set_arg(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  if (text[first] == '{') return parse_agent_set(text);
  return parse_agent_set("{" + text + "}");
}

inline std::vector<Rational> parse_budget_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = item.find_last_not_of(" \t");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

inline SemanticsMode parse_mode(const std::string& text) { return io::parse_system(text); }

inline void write_json(std::ostream& out, const io::Json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

/// Runs the command line in-process, writing to the given streams.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Influence diffusion under budgeted spends: diffusion, logics and canonical networks"};
  app.set_version_flag("--version", std::string("influence ") + kVersion);
  app.require_subcommand(1);

  std::string network_path, spend_path, seed, mode = "promo", formula_text, from, to, system = "promo",
                                                   hypotheses_path, budgets, query, explain_path, proof_path;
  bool trace = false;

  auto* diffuse = app.add_subcommand("diffuse", "Print the diffusion chain or its fixpoint");
  diffuse->add_option("--network", network_path, "Network file")->required();
  diffuse->add_option("--seed", seed, "Initially active agents, e.g. a,c")->required();
  diffuse->add_option("--spend", spend_path, "Spend file");
  diffuse->add_flag("--trace", trace, "Print every step of the chain");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a network");
  eval->add_option("--network", network_path, "Network file")->required();
  eval->add_option("--mode", mode, "promo or prev")->check(CLI::IsMember({"promo", "prev"}));
  eval->add_option("--formula", formula_text, "Formula text")->required();

  auto* budget = app.add_subcommand("budget", "Minimum promotion or blocking budget");
  budget->add_option("--network", network_path, "Network file")->required();
  budget->add_option("--mode", mode, "promo or prev")->check(CLI::IsMember({"promo", "prev"}));
  budget->add_option("--from", from, "Source set")->required();
  budget->add_option("--to", to, "Target set")->required();

  auto* canon = app.add_subcommand("canon", "Build a canonical network from hypotheses");
  canon->add_option("--system", system, "promo or prev")->check(CLI::IsMember({"promo", "prev"}));
  canon->add_option("--hypotheses", hypotheses_path, "Hypotheses file")->required();
  canon->add_option("--budgets", budgets, "Extra budgets for the preventive construction, e.g. 1,2,3");

  auto* derive = app.add_subcommand("derive", "Decide derivability of an atom from hypotheses");
  derive->add_option("--system", system, "promo or prev")->check(CLI::IsMember({"promo", "prev"}));
  derive->add_option("--hypotheses", hypotheses_path, "Hypotheses file")->required();
  derive->add_option("--query", query, "Atom, e.g. \"{b,c} |>3 {d}\"")->required();
  derive->add_option("--explain", explain_path, "Write a derivation file here ('-' for standard output)");

  auto* check = app.add_subcommand("check", "Check a derivation file");
  check->add_option("--system", system, "promo or prev")->check(CLI::IsMember({"promo", "prev"}));
  check->add_option("--hypotheses", hypotheses_path, "Hypotheses file")->required();
  check->add_option("--proof", proof_path, "Derivation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kError;
  }

  try {
    if (diffuse->parsed()) {
      auto net = io::network_from_json(io::read_json(network_path));
      SpendingFunction s = spend_path.empty() ? SpendingFunction{} : io::spend_from_json(io::read_json(spend_path));
      auto chain = diffuse_fixpoint(net, detail::parse_set_arg(seed), s);
      if (trace) {
        for (std::size_t k = 0; k + 1 < chain.steps.size(); ++k) out << format_set(chain.steps[k]) << "\n";
        if (chain.steps.size() == 1) out << format_set(chain.fixpoint()) << "\n";
      } else {
        out << format_set(chain.fixpoint()) << "\n";
      }
      return kTrue;
    }
    if (eval->parsed()) {
      auto net = io::network_from_json(io::read_json(network_path));
      Formula f = parse_formula(formula_text);
      bool verdict = evaluate(net, f, detail::parse_mode(mode));
      out << (verdict ? "true" : "false") << "\n";
      return verdict ? kTrue : kFalse;
    }
    if (budget->parsed()) {
      auto net = io::network_from_json(io::read_json(network_path));
      AgentSet a = detail::parse_set_arg(from);
      AgentSet b = detail::parse_set_arg(to);
      if (detail::parse_mode(mode) == SemanticsMode::Promotional) {
        auto r = min_promotion_budget(net, a, b);
        if (!r.feasible) {
          out << "infeasible\n";
          return kFalse;
        }
        out << "min_budget " << to_string(r.min_budget) << "\n";
        out << "witness " << format_spend(r.witness) << "\n";
        return kTrue;
      }
      auto r = min_blocking_budget(net, a, b);
      if (!r.blockable) {
        out << "unblockable\n";
        return kFalse;
      }
      out << "blocking_infimum " << to_string(r.infimum) << " attained " << (r.attained ? "true" : "false")
          << " clamp " << format_set(r.witness_set) << "\n";
      return kTrue;
    }
    if (canon->parsed()) {
      auto x = io::hypotheses_from_json(io::read_json(hypotheses_path));
      if (detail::parse_mode(system) == SemanticsMode::Promotional)
        detail::write_json(out, io::canonical_to_json(build_promotional_canonical(x)));
      else
        detail::write_json(out, io::canonical_to_json(build_preventive_canonical(x, detail::parse_budget_list(budgets))));
      return kTrue;
    }
    if (derive->parsed()) {
      auto x = io::hypotheses_from_json(io::read_json(hypotheses_path));
      AtomicStatement goal = parse_atom(query);
      SemanticsMode sys = detail::parse_mode(system);
      bool verdict = decide_derivable(sys, x, goal.left, goal.right, goal.budget);
      out << (verdict ? "true" : "false") << "\n";
      if (verdict && !explain_path.empty()) {
        auto proof = explain_derivation(sys, x, goal.left, goal.right, goal.budget);
        if (explain_path == "-") {
          detail::write_json(out, io::derivation_to_json(*proof));
        } else {
          std::ofstream file(explain_path);
          if (!file) throw InputError("cannot write '" + explain_path + "'");
          detail::write_json(file, io::derivation_to_json(*proof));
        }
      }
      return verdict ? kTrue : kFalse;
    }
    if (check->parsed()) {
      auto x = io::hypotheses_from_json(io::read_json(hypotheses_path));
      auto proof = io::derivation_from_json(io::read_json(proof_path), detail::parse_mode(system));
      auto report = check_derivation(proof, x);
      if (report) {
        out << "accept\n";
        return kTrue;
      }
      out << "reject line " << report.line << ": " << report.reason << "\n";
      return kFalse;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace influence::cli
