#pragma once

#include <algorithm>
#include <vector>

#include "palette/choosability.hpp"
#include "palette/errors.hpp"
#include "palette/graph.hpp"
#include "palette/set_family.hpp"

namespace palette {

enum class GadgetClaim { Uncolourable, Colourable };

struct GadgetOutput {
  Graph graph;
  ListAssignment assignment;
  GadgetClaim claim = GadgetClaim::Uncolourable;
};

/// Hard assignment for a complete bipartite graph from a family without
/// Property B: both sides carry the blocks as lists.  Any proper colouring's
/// A-side colour set would meet every block without containing one, which the
/// family forbids.  Sides larger than the family repeat lists cyclically.
inline GadgetOutput hard_bipartite_assignment(const SetFamily& fam, int n1 = 0, int n2 = 0) {
  if (auto w = has_property_b(fam))
    throw PreconditionError("hard_bipartite_assignment: family has Property B, witness " +
                            w->witness.str());
  const int m = fam.size();
  if (n1 <= 0) n1 = m;
  if (n2 <= 0) n2 = m;
  if (n1 < m || n2 < m)
    throw PreconditionError("hard_bipartite_assignment: both sides need at least " +
                            std::to_string(m) + " vertices");
  Graph g = complete_bipartite(n1, n2);
  std::vector<ElemSet> lists;
  lists.reserve(n1 + n2);
  for (int i = 0; i < n1; ++i) lists.push_back(fam.blocks[i % m]);
  for (int j = 0; j < n2; ++j) lists.push_back(fam.blocks[j % m]);
  return {std::move(g), ListAssignment(fam.params, std::move(lists)), GadgetClaim::Uncolourable};
}

/// The K_{m,m^m} assignment over palette [m^2]: disjoint left lists, one right
/// vertex per transversal of them.  Whatever the left side picks, the right
/// vertex carrying exactly that transversal has nothing left.
inline GadgetOutput kmm_assignment(int m) {
  if (m < 1 || m > 4) throw UnsupportedParameters("kmm_assignment: needs 1 <= m <= 4");
  const GroundParams params(m, m * m);
  int right = 1;
  for (int i = 0; i < m; ++i) right *= m;
  Graph g = complete_bipartite(m, right);

  std::vector<ElemSet> lists;
  lists.reserve(m + right);
  for (int i = 0; i < m; ++i) {
    ElemSet l;
    for (int e = i * m + 1; e <= (i + 1) * m; ++e) l.insert(e);
    lists.push_back(l);
  }
  std::vector<int> pick(m, 0);  // pick[i] indexes into left list i
  for (int r = 0; r < right; ++r) {
    ElemSet l;
    for (int i = 0; i < m; ++i) l.insert(i * m + pick[i] + 1);
    lists.push_back(l);
    for (int i = m - 1; i >= 0; --i) {
      if (++pick[i] < m) break;
      pick[i] = 0;
    }
  }
  return {std::move(g), ListAssignment(params, std::move(lists)), GadgetClaim::Uncolourable};
}

/// Greedy bipartite colouring through a Property-K transversal: all A-side
/// colours land inside the lex-first hitting set K, all B-side colours outside.
inline Colouring property_k_colouring(const Graph& g, const ListAssignment& l) {
  if (!g.bipartition)
    throw std::invalid_argument("property_k_colouring: graph carries no bipartition");
  if (static_cast<int>(l.lists.size()) != g.n)
    throw std::invalid_argument("property_k_colouring: assignment does not cover all vertices");
  const auto& [side_a, side_b] = *g.bipartition;

  std::vector<ElemSet> a_lists;
  for (int u : side_a) a_lists.push_back(l.lists[u]);
  std::sort(a_lists.begin(), a_lists.end(), ElemSetLexLess{});
  a_lists.erase(std::unique(a_lists.begin(), a_lists.end()), a_lists.end());
  const auto w = has_property_k(SetFamily(l.params, std::move(a_lists)));
  if (!w)
    throw PreconditionError(
        "property_k_colouring: the A-side lists admit no (k-1)-transversal");
  const ElemSet transversal = w->witness;

  Colouring c;
  c.colour.assign(g.n, 0);
  for (int u : side_a) c.colour[u] = l.lists[u].intersect(transversal).min_element();
  for (int v : side_b) c.colour[v] = l.lists[v].minus(transversal).min_element();
  return c;
}

}  // namespace palette
