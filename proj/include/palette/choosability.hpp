#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "palette/elem_set.hpp"
#include "palette/errors.hpp"
#include "palette/graph.hpp"

namespace palette {

enum class ChoosabilityStatus { Choosable, NotChoosable, Inconclusive };

struct ChoosabilityVerdict {
  ChoosabilityStatus status = ChoosabilityStatus::Inconclusive;
  std::optional<ListAssignment> witness;  // an uncolourable assignment, when NotChoosable
  std::uint64_t assignments_checked = 0;
};

struct ChoosabilityOptions {
  double budget_seconds = 60.0;
  int threads = 1;
  std::uint64_t exhaustive_limit = 100'000'000;  // reduced assignments
  std::function<void(const std::string&)> progress;
};

namespace detail {

inline std::optional<Colouring> find_l_colouring_impl(
    const std::vector<std::vector<std::uint64_t>>& adj, const std::vector<ElemSet>& lists) {
  const int n = static_cast<int>(lists.size());
  std::vector<std::uint64_t> cand(n);
  for (int v = 0; v < n; ++v) cand[v] = lists[v].bits;
  std::vector<int> colour(n, 0);

  // Smallest-remaining-list-first backtracking; vertices whose list has shrunk
  // to one colour are picked immediately, which is the forced-move propagation.
  std::function<bool()> solve = [&]() -> bool {
    int best = -1, best_count = INT_MAX;
    for (int v = 0; v < n; ++v) {
      if (colour[v]) continue;
      const int c = std::popcount(cand[v]);
      if (c == 0) return false;
      if (c < best_count) {
        best_count = c;
        best = v;
        if (c == 1) break;
      }
    }
    if (best == -1) return true;

    for (std::uint64_t rem = cand[best]; rem; rem &= rem - 1) {
      const int col = std::countr_zero(rem) + 1;
      const std::uint64_t bit = rem & (~rem + 1);
      colour[best] = col;
      std::vector<int> touched;
      bool dead = false;
      for (int w = 0; w < static_cast<int>(adj[best].size()); ++w) {
        std::uint64_t nb = adj[best][w];
        while (nb) {
          const int u = w * 64 + std::countr_zero(nb);
          nb &= nb - 1;
          if (!colour[u] && (cand[u] & bit)) {
            cand[u] &= ~bit;
            touched.push_back(u);
            if (cand[u] == 0) dead = true;
          }
        }
      }
      if (!dead && solve()) return true;
      for (int u : touched) cand[u] |= bit;
      colour[best] = 0;
    }
    return false;
  };

  if (!solve()) return std::nullopt;
  return Colouring{std::move(colour)};
}

// Twin classes: vertices with identical adjacency rows are interchangeable for
// list assignments (they are pairwise non-adjacent with equal neighbourhoods).
// Vertex 0 is split off as a singleton pivot whose list gets normalized.
struct VertexClasses {
  std::vector<std::vector<int>> members;  // members[0] == {0}
};

inline VertexClasses twin_classes(const Graph& g) {
  const auto adj = g.adjacency();
  VertexClasses cls;
  cls.members.push_back({0});
  std::map<std::vector<std::uint64_t>, int> group;
  for (int v = 1; v < g.n; ++v) {
    auto [it, fresh] = group.try_emplace(adj[v], static_cast<int>(cls.members.size()));
    if (fresh)
      cls.members.push_back({v});
    else
      cls.members[it->second].push_back(v);
  }
  return cls;
}

// Nondecreasing index tuples per class, advanced with the last class fastest.
struct ReducedOdometer {
  int list_count = 0;
  std::vector<std::vector<int>> tuples;  // excludes the pivot class

  explicit ReducedOdometer(int lists, const VertexClasses& cls) : list_count(lists) {
    for (std::size_t c = 1; c < cls.members.size(); ++c)
      tuples.emplace_back(cls.members[c].size(), 0);
  }

  bool advance() {
    for (int c = static_cast<int>(tuples.size()) - 1; c >= 0; --c) {
      auto& t = tuples[c];
      for (int j = static_cast<int>(t.size()) - 1; j >= 0; --j) {
        if (t[j] < list_count - 1) {
          const int v = t[j] + 1;
          for (int i = j; i < static_cast<int>(t.size()); ++i) t[i] = v;
          for (std::size_t later = c + 1; later < tuples.size(); ++later)
            std::fill(tuples[later].begin(), tuples[later].end(), 0);
          return true;
        }
      }
    }
    return false;
  }
};

inline double multiset_count(int lists, int slots) {
  double r = 1.0;
  for (int i = 1; i <= slots; ++i) r = r * (lists + slots - i) / i;
  return r;
}

inline double reduced_space_size(int lists, const VertexClasses& cls) {
  double total = 1.0;
  for (std::size_t c = 1; c < cls.members.size(); ++c)
    total *= multiset_count(lists, static_cast<int>(cls.members[c].size()));
  return total;
}

inline void assemble_raw(int n, const std::vector<ElemSet>& lists, const VertexClasses& cls,
                         const ReducedOdometer& odo, std::vector<ElemSet>& per_vertex) {
  per_vertex.assign(n, ElemSet{});
  per_vertex[0] = lists[0];
  for (std::size_t c = 1; c < cls.members.size(); ++c)
    for (std::size_t j = 0; j < cls.members[c].size(); ++j)
      per_vertex[cls.members[c][j]] = lists[odo.tuples[c - 1][j]];
}

// Complete bipartite detection: exactly two adjacency-row kinds, each equal to
// the other side's vertex mask.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> complete_bipartite_sides(
    const Graph& g) {
  if (g.edges.empty()) return std::nullopt;
  const auto adj = g.adjacency();
  std::vector<int> a, b;
  const std::vector<std::uint64_t>& row0 = adj[0];
  for (int v = 0; v < g.n; ++v) {
    if (adj[v] == row0)
      a.push_back(v);
    else
      b.push_back(v);
  }
  if (a.empty() || b.empty()) return std::nullopt;
  std::vector<std::uint64_t> mask_a(g.word_count(), 0), mask_b(g.word_count(), 0);
  for (int v : a) mask_a[v / 64] |= 1ull << (v % 64);
  for (int v : b) mask_b[v / 64] |= 1ull << (v % 64);
  for (int v : a)
    if (adj[v] != mask_b) return std::nullopt;
  for (int v : b)
    if (adj[v] != mask_a) return std::nullopt;
  return std::make_pair(std::move(a), std::move(b));
}

// Subset-indexed bit tables: for every S in 2^[ell], whether S meets a list /
// contains a list.  Colourability of a complete bipartite assignment reduces
// to: exists S meeting every A-list and containing no B-list.
struct SubsetTables {
  int ell;
  int words;  // of the 2^ell bitvector
  std::vector<std::vector<std::uint64_t>> meets;     // per list id
  std::vector<std::vector<std::uint64_t>> contains;  // per list id

  SubsetTables(int ell_, const std::vector<ElemSet>& lists) : ell(ell_) {
    const std::uint64_t n_subsets = 1ull << ell;
    words = static_cast<int>((n_subsets + 63) / 64);
    meets.assign(lists.size(), std::vector<std::uint64_t>(words, 0));
    contains.assign(lists.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < lists.size(); ++i) {
      const std::uint64_t bits = lists[i].bits;
      for (std::uint64_t s = 0; s < n_subsets; ++s) {
        if (s & bits) meets[i][s / 64] |= 1ull << (s % 64);
        if ((s & bits) == bits) contains[i][s / 64] |= 1ull << (s % 64);
      }
    }
  }
};

}  // namespace detail

/// Deterministic proper list-colouring search (backtracking with
/// smallest-remaining-list-first and forced-move propagation).
inline std::optional<Colouring> find_l_colouring(const Graph& g, const ListAssignment& l) {
  if (static_cast<int>(l.lists.size()) != g.n)
    throw std::invalid_argument("find_l_colouring: assignment does not cover all vertices");
  return detail::find_l_colouring_impl(g.adjacency(), l.lists);
}

/// Adversary search: scans (k,ell)-list-assignments in a fixed reduced order
/// (pivot list pinned to {1..k} via colour permutations, per-twin-class list
/// multisets) until one admits no proper colouring or the space is exhausted.
inline ChoosabilityVerdict decide_kl_choosable(const Graph& g, GroundParams params,
                                               const ChoosabilityOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(opts.budget_seconds));
  const std::vector<ElemSet> lists = all_subsets_of_size(params.ell, params.k);
  const detail::VertexClasses cls = detail::twin_classes(g);
  const double space = detail::reduced_space_size(static_cast<int>(lists.size()), cls);
  const auto adj = g.adjacency();

  ChoosabilityVerdict verdict;

  // Complete bipartite fast path: subset bit tables make one reduced
  // assignment a few word operations.
  const auto sides = detail::complete_bipartite_sides(g);
  const bool tables_fit =
      params.ell <= 20 && cls.members.size() == 3 &&
      static_cast<double>(lists.size()) * (1ull << params.ell) < 2e9 &&
      detail::multiset_count(static_cast<int>(lists.size()),
                             static_cast<int>(cls.members[2].size())) *
              (1ull << params.ell) / 8.0 <
          256.0 * 1024 * 1024;
  if (sides && tables_fit) {
    const detail::SubsetTables tab(params.ell, lists);
    const int W = tab.words;
    // Which side each class sits on: the pivot (vertex 0) side gets "meets",
    // the other side gets "contains".
    std::vector<bool> on_pivot_side(3, false);
    on_pivot_side[0] = true;
    {
      const std::vector<int>& pivot_side =
          std::find(sides->first.begin(), sides->first.end(), 0) != sides->first.end()
              ? sides->first
              : sides->second;
      for (int c = 1; c <= 2; ++c)
        on_pivot_side[c] = std::find(pivot_side.begin(), pivot_side.end(),
                                     cls.members[c].front()) != pivot_side.end();
    }

    // Per inner-class tuple (class 2, the fastest-varying), cache its side
    // vector; the outer loop combines pivot + class-1 contributions.
    std::vector<std::vector<int>> inner_tuples;
    std::vector<std::vector<std::uint64_t>> inner_vec;
    {
      std::vector<int> t(cls.members[2].size(), 0);
      for (;;) {
        std::vector<std::uint64_t> v(W, on_pivot_side[2] ? ~0ull : 0ull);
        for (int id : t) {
          if (on_pivot_side[2])
            for (int w = 0; w < W; ++w) v[w] &= tab.meets[id][w];
          else
            for (int w = 0; w < W; ++w) v[w] |= tab.contains[id][w];
        }
        inner_tuples.push_back(t);
        inner_vec.push_back(std::move(v));
        int j = static_cast<int>(t.size()) - 1;
        while (j >= 0 && t[j] == static_cast<int>(lists.size()) - 1) --j;
        if (j < 0) break;
        const int nv = t[j] + 1;
        for (int i = j; i < static_cast<int>(t.size()); ++i) t[i] = nv;
      }
    }

    std::vector<int> outer(cls.members[1].size(), 0);
    const std::uint64_t inner_count = inner_tuples.size();
    std::uint64_t outer_rank = 0;
    for (;;) {
      std::vector<std::uint64_t> base_meets(W, 0), base_contains(W, 0);
      for (int w = 0; w < W; ++w) base_meets[w] = tab.meets[0][w];  // pivot list {1..k}
      for (int id : outer) {
        if (on_pivot_side[1])
          for (int w = 0; w < W; ++w) base_meets[w] &= tab.meets[id][w];
        else
          for (int w = 0; w < W; ++w) base_contains[w] |= tab.contains[id][w];
      }
      for (std::uint64_t i = 0; i < inner_count; ++i) {
        bool colourable = false;
        const std::vector<std::uint64_t>& iv = inner_vec[i];
        for (int w = 0; w < W; ++w) {
          const std::uint64_t meets_w = on_pivot_side[2] ? (base_meets[w] & iv[w]) : base_meets[w];
          const std::uint64_t bad_w = on_pivot_side[2] ? base_contains[w] : (base_contains[w] | iv[w]);
          if (meets_w & ~bad_w) {
            colourable = true;
            break;
          }
        }
        if (!colourable) {
          verdict.status = ChoosabilityStatus::NotChoosable;
          verdict.assignments_checked = outer_rank * inner_count + i + 1;
          std::vector<ElemSet> per_vertex(g.n);
          per_vertex[0] = lists[0];
          for (std::size_t j = 0; j < cls.members[1].size(); ++j)
            per_vertex[cls.members[1][j]] = lists[outer[j]];
          for (std::size_t j = 0; j < cls.members[2].size(); ++j)
            per_vertex[cls.members[2][j]] = lists[inner_tuples[i][j]];
          verdict.witness = ListAssignment(params, std::move(per_vertex));
          return verdict;
        }
        const std::uint64_t done = outer_rank * inner_count + i + 1;
        if (done >= opts.exhaustive_limit) {
          verdict.status = ChoosabilityStatus::Inconclusive;
          verdict.assignments_checked = done;
          return verdict;
        }
      }
      ++outer_rank;
      if (std::chrono::steady_clock::now() > deadline) {
        verdict.status = ChoosabilityStatus::Inconclusive;
        verdict.assignments_checked = outer_rank * inner_count;
        return verdict;
      }
      if (opts.progress && (outer_rank & 1023u) == 0)
        opts.progress("scanned " + std::to_string(outer_rank * inner_count) + " of " +
                      std::to_string(space) + " reduced assignments");
      int j = static_cast<int>(outer.size()) - 1;
      while (j >= 0 && outer[j] == static_cast<int>(lists.size()) - 1) --j;
      if (j < 0) break;
      const int nv = outer[j] + 1;
      for (int i = j; i < static_cast<int>(outer.size()); ++i) outer[i] = nv;
    }
    verdict.status = ChoosabilityStatus::Choosable;
    verdict.assignments_checked = outer_rank * inner_count;
    return verdict;
  }

  // General path: leapfrogging workers scan interleaved residue classes of the
  // fixed enumeration order; the reported witness is the first failure in that
  // order regardless of thread count.
  const int threads = std::max(1, opts.threads);
  std::atomic<std::uint64_t> first_fail{~0ull};
  std::atomic<bool> out_of_time{false};
  std::vector<std::uint64_t> worker_checked(threads, 0);
  std::vector<std::uint64_t> worker_fail_index(threads, ~0ull);
  std::vector<std::vector<ElemSet>> worker_witness(threads);

  auto worker = [&](int w) {
    detail::ReducedOdometer odo(static_cast<int>(lists.size()), cls);
    std::uint64_t index = 0;
    for (int s = 0; s < w; ++s) {
      if (!odo.advance()) return;
      ++index;
    }
    std::vector<ElemSet> per_vertex;
    for (;;) {
      if (index >= opts.exhaustive_limit) return;
      if (index > first_fail.load(std::memory_order_relaxed)) return;
      if ((worker_checked[w] & 1023u) == 0 && std::chrono::steady_clock::now() > deadline) {
        out_of_time.store(true);
        return;
      }
      detail::assemble_raw(g.n, lists, cls, odo, per_vertex);
      ++worker_checked[w];
      if (!detail::find_l_colouring_impl(adj, per_vertex)) {
        worker_fail_index[w] = index;
        worker_witness[w] = per_vertex;
        std::uint64_t cur = first_fail.load();
        while (index < cur && !first_fail.compare_exchange_weak(cur, index)) {
        }
        return;
      }
      if (opts.progress && w == 0 && (worker_checked[0] % 1000000u) == 0)
        opts.progress("scanned ~" + std::to_string(worker_checked[0] * threads) + " of " +
                      std::to_string(space) + " reduced assignments");
      for (int s = 0; s < threads; ++s) {
        if (!odo.advance()) return;
        ++index;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  const std::uint64_t fail_at = first_fail.load();
  if (fail_at != ~0ull) {
    verdict.status = ChoosabilityStatus::NotChoosable;
    verdict.assignments_checked = fail_at + 1;
    for (int w = 0; w < threads; ++w)
      if (worker_fail_index[w] == fail_at) verdict.witness = ListAssignment(params, worker_witness[w]);
    return verdict;
  }
  std::uint64_t checked = 0;
  for (std::uint64_t c : worker_checked) checked += c;
  if (out_of_time.load() || static_cast<double>(checked) < space - 0.5) {
    verdict.status = ChoosabilityStatus::Inconclusive;
    verdict.assignments_checked = checked;
    return verdict;
  }
  verdict.status = ChoosabilityStatus::Choosable;
  verdict.assignments_checked = checked;
  return verdict;
}

/// k-choosability via the palette reduction: a graph on n vertices is
/// k-choosable iff it is (k, max(n,k))-choosable.
inline ChoosabilityVerdict decide_choosable(const Graph& g, int k,
                                            const ChoosabilityOptions& opts = {}) {
  return decide_kl_choosable(g, GroundParams(k, std::max(g.n, k)), opts);
}

struct ChoiceNumberResult {
  int value = 0;  // least k found choosable (exact), or last k tried
  bool exact = false;
  std::uint64_t assignments_checked = 0;
};

/// Exact choice number by increasing k; terminates because every graph on n
/// vertices is n-choosable.
inline ChoiceNumberResult choice_number(const Graph& g, const ChoosabilityOptions& opts = {}) {
  ChoiceNumberResult res;
  for (int k = 1; k <= g.n; ++k) {
    const ChoosabilityVerdict v = decide_choosable(g, k, opts);
    res.value = k;
    res.assignments_checked += v.assignments_checked;
    if (v.status == ChoosabilityStatus::Choosable) {
      res.exact = true;
      return res;
    }
    if (v.status == ChoosabilityStatus::Inconclusive) return res;
  }
  return res;  // unreachable: (n,n)-assignment always colourable
}

}  // namespace palette
