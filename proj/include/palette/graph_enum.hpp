#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "palette/errors.hpp"
#include "palette/graph.hpp"

namespace palette {

// One representative per isomorphism class: keep exactly the edge masks that
// are numerically least within their relabelling orbit.  Fine up to n = 7
// (2^21 masks x 5040 permutations).
inline std::vector<Graph> all_graphs_up_to_iso(int n) {
  if (n < 1 || n > 7)
    throw UnsupportedParameters("all_graphs_up_to_iso: supported for 1 <= n <= 7");
  std::vector<std::pair<int, int>> pairs;
  int idx[7][7] = {};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      idx[i][j] = static_cast<int>(pairs.size());
      pairs.emplace_back(i, j);
    }
  const int ne = static_cast<int>(pairs.size());

  std::vector<std::vector<int>> edge_perms;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> table(ne);
    for (int e = 0; e < ne; ++e) {
      int u = perm[pairs[e].first], v = perm[pairs[e].second];
      if (u > v) std::swap(u, v);
      table[e] = idx[u][v];
    }
    edge_perms.push_back(std::move(table));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
    bool least = true;
    for (const auto& table : edge_perms) {
      std::uint32_t mapped = 0;
      for (std::uint32_t m = mask; m; m &= m - 1)
        mapped |= 1u << table[std::countr_zero(m)];
      if (mapped < mask) {
        least = false;
        break;
      }
    }
    if (!least) continue;
    std::vector<std::pair<int, int>> edges;
    for (std::uint32_t m = mask; m; m &= m - 1) edges.push_back(pairs[std::countr_zero(m)]);
    out.push_back(Graph(n, std::move(edges)));
  }
  return out;
}

}  // namespace palette
