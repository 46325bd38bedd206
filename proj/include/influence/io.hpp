#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "influence/canonical.hpp"
#include "influence/logic.hpp"
#include "influence/network.hpp"

// JSON file formats. Every number is written as a string ("3", "1/2",
// "-0.25") so rationals survive a round trip; integer JSON numbers are
// accepted on input as well.
//
// network     {"agents": [..], "influence": [{"from", "to", "weight"}],
//              "propensity": {id: num}, "threshold": {id: num}, "names"?: {..}}
// spend       {id: num}
// hypotheses  {"universe": [..], "hypotheses": [{"left": [..], "budget": num, "right": [..]}]}
// derivation  {"system"?: "promo"|"prev", "lines": [{"formula": str, "rule": str,
//              "refs"?: [line numbers], "hyp"?: hypothesis number}]}

namespace influence::io {

using Json = nlohmann::ordered_json;

inline Rational number(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ValueError& e) {
      throw ValueError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError(where + ": expected a number string");
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline AgentSet agent_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of agent names");
  AgentSet out;
  for (const auto& a : j) {
    if (!a.is_string()) throw InputError(where + ": agent names must be strings");
    out.insert(a.get<std::string>());
  }
  return out;
}

inline Json agent_list(const AgentSet& set) {
  Json out = Json::array();
  for (const auto& a : set) out.push_back(a);
  return out;
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline SocialNetwork network_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("network: expected an object");
  for (const auto& [key, value] : j.items())
    if (key != "agents" && key != "influence" && key != "propensity" && key != "threshold" && key != "names")
      throw InputError("network: unexpected key \"" + key + "\"");

  const Json& agents_json = field(j, "agents", "network");
  if (!agents_json.is_array()) throw InputError("network: \"agents\" must be an array");
  std::vector<Agent> agents;
  for (const auto& a : agents_json) {
    if (!a.is_string()) throw InputError("network: agent names must be strings");
    agents.push_back(a.get<std::string>());
  }

  std::vector<SocialNetwork::Edge> edges;
  if (j.contains("influence")) {
    for (const auto& e : j.at("influence")) {
      auto from = field(e, "from", "network influence").get<std::string>();
      auto to = field(e, "to", "network influence").get<std::string>();
      edges.push_back({from, to, number(field(e, "weight", "network influence"), "weight " + from + " -> " + to)});
    }
  }

  auto read_map = [&](const char* key) {
    std::map<Agent, Rational> out;
    const Json& m = field(j, key, "network");
    if (!m.is_object()) throw InputError(std::string("network: \"") + key + "\" must be an object");
    for (const auto& [agent, value] : m.items()) out[agent] = number(value, std::string(key) + " of " + agent);
    return out;
  };
  return SocialNetwork(std::move(agents), edges, read_map("propensity"), read_map("threshold"));
}

inline Json network_to_json(const SocialNetwork& net) {
  Json j;
  j["agents"] = Json::array();
  for (const auto& a : net.agents()) j["agents"].push_back(a);
  j["influence"] = Json::array();
  for (const auto& e : net.edges())
    j["influence"].push_back({{"from", e.from}, {"to", e.to}, {"weight", to_string(e.weight)}});
  j["propensity"] = Json::object();
  j["threshold"] = Json::object();
  for (const auto& a : net.agents()) {
    j["propensity"][a] = to_string(net.propensity(a));
    j["threshold"][a] = to_string(net.threshold(a));
  }
  return j;
}

inline SpendingFunction spend_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("spend: expected an object");
  SpendingFunction s;
  for (const auto& [agent, value] : j.items()) s.set(agent, number(value, "spend of " + agent));
  return s;
}

inline Json spend_to_json(const SpendingFunction& s) {
  Json j = Json::object();
  for (const auto& [agent, value] : s.entries()) j[agent] = to_string(value);
  return j;
}

inline HypothesisSet hypotheses_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("hypotheses: expected an object");
  HypothesisSet x;
  const Json& list = field(j, "hypotheses", "hypotheses");
  if (!list.is_array()) throw InputError("hypotheses: \"hypotheses\" must be an array");
  for (const auto& h : list) {
    std::string where = "hypothesis " + std::to_string(x.hypotheses.size() + 1);
    AtomicStatement a{agent_list(field(h, "left", where), where), number(field(h, "budget", where), where),
                      agent_list(field(h, "right", where), where)};
    if (a.budget < 0) throw ValueError(where + ": negative budget");
    x.hypotheses.push_back(std::move(a));
  }
  if (j.contains("universe")) {
    x.universe = agent_list(j.at("universe"), "universe");
  } else {
    for (const auto& h : x.hypotheses) x.universe = set_union(x.universe, set_union(h.left, h.right));
  }
  x.validate();
  return x;
}

inline Json hypotheses_to_json(const HypothesisSet& x) {
  Json j;
  j["universe"] = agent_list(x.universe);
  j["hypotheses"] = Json::array();
  for (const auto& h : x.hypotheses)
    j["hypotheses"].push_back({{"left", agent_list(h.left)}, {"budget", to_string(h.budget)}, {"right", agent_list(h.right)}});
  return j;
}

inline std::string system_name(SemanticsMode m) { return m == SemanticsMode::Promotional ? "promo" : "prev"; }

inline SemanticsMode parse_system(const std::string& name) {
  if (name == "promo") return SemanticsMode::Promotional;
  if (name == "prev") return SemanticsMode::Preventive;
  throw InputError("unknown system '" + name + "' (expected promo or prev)");
}

inline Derivation derivation_from_json(const Json& j, SemanticsMode system) {
  if (!j.is_object()) throw InputError("proof: expected an object");
  Derivation d;
  d.system = system;
  if (j.contains("system") && parse_system(j.at("system").get<std::string>()) != system)
    throw InputError("proof declares system '" + j.at("system").get<std::string>() + "'");
  const Json& lines = field(j, "lines", "proof");
  if (!lines.is_array()) throw InputError("proof: \"lines\" must be an array");
  for (const auto& l : lines) {
    std::string where = "proof line " + std::to_string(d.lines.size() + 1);
    auto text = field(l, "formula", where).get<std::string>();
    Formula f = [&] {
      try {
        return parse_formula(text);
      } catch (const ParseError& e) {
        throw InputError(where + ": " + e.what());
      }
    }();
    DerivationLine line{f, parse_rule(field(l, "rule", where).get<std::string>()), {}, 0};
    if (l.contains("refs"))
      for (const auto& r : l.at("refs")) line.refs.push_back(r.get<std::size_t>());
    if (l.contains("hyp")) line.hyp = l.at("hyp").get<std::size_t>();
    d.lines.push_back(std::move(line));
  }
  return d;
}

inline Json derivation_to_json(const Derivation& d) {
  Json j;
  j["system"] = system_name(d.system);
  j["lines"] = Json::array();
  for (const auto& line : d.lines) {
    Json l;
    l["formula"] = print_formula(line.formula);
    l["rule"] = rule_name(line.rule);
    if (!line.refs.empty()) l["refs"] = line.refs;
    if (line.rule == Rule::Hypothesis) l["hyp"] = line.hyp;
    j["lines"].push_back(std::move(l));
  }
  return j;
}

inline Json canonical_to_json(const PromoCanonical& c) {
  Json j = network_to_json(c.network);
  Json alpha = Json::object();
  Json beta = Json::object();
  for (std::size_t i = 0; i < c.alpha.size(); ++i) {
    alpha[std::to_string(i + 1)] = c.alpha[i];
    beta[std::to_string(i + 1)] = c.beta[i];
  }
  j["names"] = {{"alpha", alpha}, {"beta", beta}};
  return j;
}

inline Json canonical_to_json(const PrevCanonical& c) {
  Json j = network_to_json(c.network);
  Json labels = Json::array();
  for (const auto& l : c.labels)
    labels.push_back({{"closure", agent_list(l.closure)}, {"budget", to_string(l.budget)}, {"alpha", l.alpha}, {"beta", l.beta}});
  Json budgets = Json::array();
  for (const auto& b : c.budgets) budgets.push_back(to_string(b));
  j["names"] = {{"epsilon", to_string(c.epsilon)}, {"budgets", budgets}, {"labels", labels}};
  return j;
}

}  // namespace influence::io
