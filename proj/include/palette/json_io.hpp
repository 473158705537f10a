#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "palette/bounds.hpp"
#include "palette/choosability.hpp"
#include "palette/extremal.hpp"
#include "palette/gadgets.hpp"
#include "palette/graph.hpp"
#include "palette/set_family.hpp"

namespace palette {

using nlohmann::json;

inline json elem_set_to_json(ElemSet s) { return json(s.elements()); }

inline ElemSet elem_set_from_json(const json& j) {
  ElemSet s;
  int count = 0;
  for (const auto& e : j) {
    const int v = e.get<int>();
    if (v < 1 || v > 64) throw std::invalid_argument("set element out of range: " + std::to_string(v));
    s.insert(v);
    ++count;
  }
  if (s.size() != count) throw std::invalid_argument("duplicate element in set");
  return s;
}

inline void to_json(json& j, const SetFamily& f) {
  j = json{{"ell", f.params.ell}, {"k", f.params.k}, {"sets", json::array()}};
  for (ElemSet b : f.blocks) j["sets"].push_back(elem_set_to_json(b));
}

inline void from_json(const json& j, SetFamily& f) {
  const GroundParams p(j.at("k").get<int>(), j.at("ell").get<int>());
  std::vector<ElemSet> blocks;
  for (const auto& s : j.at("sets")) blocks.push_back(elem_set_from_json(s));
  f = SetFamily(p, std::move(blocks));
}

inline void to_json(json& j, const Graph& g) {
  j = json{{"n", g.n}, {"edges", json::array()}};
  for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
  if (g.bipartition) j["bipartition"] = {g.bipartition->first, g.bipartition->second};
}

inline void from_json(const json& j, Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw std::invalid_argument("edge must have two endpoints");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::optional<std::pair<std::vector<int>, std::vector<int>>> bip;
  if (j.contains("bipartition")) {
    const auto& b = j.at("bipartition");
    if (b.size() != 2) throw std::invalid_argument("bipartition must have two sides");
    bip = std::make_pair(b[0].get<std::vector<int>>(), b[1].get<std::vector<int>>());
  }
  g = Graph(j.at("n").get<int>(), std::move(edges), std::move(bip));
}

inline void to_json(json& j, const ListAssignment& l) {
  j = json{{"k", l.params.k}, {"ell", l.params.ell}, {"lists", json::array()}};
  for (ElemSet s : l.lists) j["lists"].push_back(elem_set_to_json(s));
}

inline void from_json(const json& j, ListAssignment& l) {
  const GroundParams p(j.at("k").get<int>(), j.at("ell").get<int>());
  std::vector<ElemSet> lists;
  for (const auto& s : j.at("lists")) lists.push_back(elem_set_from_json(s));
  l = ListAssignment(p, std::move(lists));
}

inline void to_json(json& j, const Colouring& c) { j = json{{"colours", c.colour}}; }

inline void from_json(const json& j, Colouring& c) {
  c.colour = j.at("colours").get<std::vector<int>>();
}

inline json bracket_to_json(const BracketValue& b) {
  return json{{"num", boost::multiprecision::numerator(b.exact).str()},
              {"den", boost::multiprecision::denominator(b.exact).str()},
              {"approx", b.approx}};
}

inline void to_json(json& j, const ExtremalResult& r) {
  j = json{{"quantity", r.quantity == Quantity::R ? "R" : "M"},
           {"k", r.params.k},
           {"ell", r.params.ell},
           {"nodes", r.stats.nodes},
           {"seconds", r.stats.seconds}};
  switch (r.kind) {
    case ExtremalResult::Kind::Exact:
      j["value"] = r.value;
      break;
    case ExtremalResult::Kind::Infinite:
      j["value"] = "infinite";
      break;
    case ExtremalResult::Kind::Inconclusive:
      j["value"] = "inconclusive";
      j["lower"] = r.lower;
      j["upper"] = r.upper;
      break;
  }
  if (r.witness) j["witness"] = *r.witness;
  if (r.canonical_witness_count) j["canonical_witnesses"] = *r.canonical_witness_count;
}

inline void to_json(json& j, const ChoosabilityVerdict& v) {
  const char* status = v.status == ChoosabilityStatus::Choosable      ? "choosable"
                       : v.status == ChoosabilityStatus::NotChoosable ? "not_choosable"
                                                                      : "inconclusive";
  j = json{{"status", status}, {"assignments_checked", v.assignments_checked}};
  if (v.witness) j["witness"] = *v.witness;
}

inline void to_json(json& j, const GadgetOutput& g) {
  j = json{{"graph", g.graph},
           {"assignment", g.assignment},
           {"claim", g.claim == GadgetClaim::Uncolourable ? "uncolourable" : "colourable"}};
}

inline void to_json(json& j, const BoundReport& r) {
  j = json{{"k", r.params.k},
           {"ell", r.params.ell},
           {"m_value", r.m_value_used},
           {"exp_lower", r.exp_lower},
           {"factorial_lower", bracket_to_json(r.factorial_lower)},
           {"factorial_upper", bracket_to_json(r.factorial_upper)},
           {"min_degree_d", r.min_degree_d}};
}

inline void to_json(json& j, const RateFunctions& r) {
  j = json{{"b", r.b}, {"krsg", r.krsg}, {"containers", r.containers}, {"r_rate", r.r_rate},
           {"f", r.f}};
}

}  // namespace palette
