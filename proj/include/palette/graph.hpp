#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palette/elem_set.hpp"

namespace palette {

// Simple undirected graph on vertices 0..n-1, optionally with a bipartition
// (every edge must cross it).
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition;

  Graph() = default;
  Graph(int n_, std::vector<std::pair<int, int>> es,
        std::optional<std::pair<std::vector<int>, std::vector<int>>> bip = std::nullopt)
      : n(n_), edges(std::move(es)), bipartition(std::move(bip)) {
    if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
    for (auto& [u, v] : edges) {
      if (u == v) throw std::invalid_argument("Graph: loop at vertex " + std::to_string(u));
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("Graph: duplicate edge");
    if (bipartition) {
      std::vector<int> side(n, -1);
      for (int a : bipartition->first) {
        if (a < 0 || a >= n || side[a] != -1) throw std::invalid_argument("Graph: bad bipartition");
        side[a] = 0;
      }
      for (int b : bipartition->second) {
        if (b < 0 || b >= n || side[b] != -1) throw std::invalid_argument("Graph: bad bipartition");
        side[b] = 1;
      }
      for (int v = 0; v < n; ++v)
        if (side[v] == -1) throw std::invalid_argument("Graph: bipartition does not cover vertex " +
                                                       std::to_string(v));
      for (auto [u, v] : edges)
        if (side[u] == side[v])
          throw std::invalid_argument("Graph: edge inside one side of the bipartition");
    }
  }

  int word_count() const { return (n + 63) / 64; }

  // Row bitsets of the adjacency matrix.
  std::vector<std::vector<std::uint64_t>> adjacency() const {
    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(word_count(), 0));
    for (auto [u, v] : edges) {
      adj[u][v / 64] |= 1ull << (v % 64);
      adj[v][u / 64] |= 1ull << (u % 64);
    }
    return adj;
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> es;
  es.reserve(static_cast<std::size_t>(a) * b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) es.emplace_back(u, a + v);
  std::vector<int> left(a), right(b);
  for (int u = 0; u < a; ++u) left[u] = u;
  for (int v = 0; v < b; ++v) right[v] = a + v;
  return Graph(a + b, std::move(es), std::make_pair(std::move(left), std::move(right)));
}

// A (k,ell)-list-assignment: every vertex gets a k-subset of [ell].
struct ListAssignment {
  GroundParams params;
  std::vector<ElemSet> lists;

  ListAssignment() = default;
  ListAssignment(GroundParams p, std::vector<ElemSet> ls) : params(p), lists(std::move(ls)) {
    const ElemSet ground = ElemSet::full(params.ell);
    for (ElemSet l : lists) {
      if (l.size() != params.k)
        throw std::invalid_argument("ListAssignment: list " + l.str() + " does not have size " +
                                    std::to_string(params.k));
      if (!l.subset_of(ground))
        throw std::invalid_argument("ListAssignment: list " + l.str() + " leaves the palette");
    }
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;
};

struct Colouring {
  std::vector<int> colour;  // 1-indexed palette colours

  friend bool operator==(const Colouring&, const Colouring&) = default;
};

inline bool is_proper_l_colouring(const Graph& g, const ListAssignment& l, const Colouring& c) {
  if (static_cast<int>(c.colour.size()) != g.n || static_cast<int>(l.lists.size()) != g.n)
    return false;
  for (int v = 0; v < g.n; ++v) {
    const int col = c.colour[v];
    if (col < 1 || col > l.params.ell || !l.lists[v].contains(col)) return false;
  }
  for (auto [u, v] : g.edges)
    if (c.colour[u] == c.colour[v]) return false;
  return true;
}

}  // namespace palette
