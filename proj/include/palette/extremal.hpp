#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "palette/elem_set.hpp"
#include "palette/errors.hpp"
#include "palette/set_family.hpp"

namespace palette {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigInt b = 1;
  for (int i = 0; i < r; ++i) {
    b *= n - i;
    b /= i + 1;
  }
  return b;
}

// An exactly-computed bound value.  `approx` is the double the bound evaluates
// to; for the transversal upper bound the logarithmic factor is folded into
// `approx` only, while `exact` keeps the underlying factorial ratio.
struct BracketValue {
  Rational exact;
  double approx = 0.0;
};

// ell! (ell-2k+1)! / ((ell-k)! (ell-k+1)!), the transversal-count lower bound.
inline BracketValue lower_bound_r(GroundParams p) {
  if (p.ell <= 2 * p.k - 2)
    throw std::domain_error("lower_bound_r: needs ell >= 2k-1 (R is infinite below)");
  const Rational ratio(factorial(p.ell) * factorial(p.ell - 2 * p.k + 1),
                       factorial(p.ell - p.k) * factorial(p.ell - p.k + 1));
  return {ratio, ratio.convert_to<double>()};
}

// Same ratio times ln C(ell,k-1); strict upper bound for R(k,ell).
inline BracketValue upper_bound_r(GroundParams p) {
  BracketValue b = lower_bound_r(p);
  const double ln_choices = std::log(binomial(p.ell, p.k - 1).convert_to<double>());
  b.approx *= ln_choices;
  return b;
}

enum class Quantity { M, R };

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct ExtremalResult {
  Quantity quantity = Quantity::R;
  GroundParams params;
  enum class Kind { Exact, Infinite, Inconclusive };
  Kind kind = Kind::Exact;
  int value = 0;
  int lower = 0, upper = 0;  // proven bracket when Inconclusive
  std::optional<SetFamily> witness;
  SearchStats stats;
  std::optional<std::int64_t> canonical_witness_count;
};

struct SolveOptions {
  double budget_seconds = 60.0;
  int threads = 1;
  bool count_witnesses = false;
  std::function<void(const std::string&)> progress;
};

namespace detail {

// Minimum-cover view shared by both extremal numbers: choose blocks so that
// every target is covered.  For R the targets are the (k-1)-subsets K and a
// block covers K iff it is disjoint from K; for M the targets are the
// complement-pairs {B, [ell]\B} (represented by the member containing 1) and a
// block covers the pair iff it is inside B or disjoint from it.
struct CoverProblem {
  GroundParams params;
  std::vector<ElemSet> blocks;
  int n_targets = 0;
  int words = 0;
  std::vector<std::uint64_t> covers;      // blocks x words
  std::vector<std::uint64_t> suffix_any;  // (blocks+1) x words, union of covers from id on

  const std::uint64_t* cover(int b) const { return covers.data() + static_cast<std::size_t>(b) * words; }
  const std::uint64_t* suffix(int b) const { return suffix_any.data() + static_cast<std::size_t>(b) * words; }

  void finish() {
    const int nb = static_cast<int>(blocks.size());
    suffix_any.assign(static_cast<std::size_t>(nb + 1) * words, 0);
    for (int b = nb - 1; b >= 0; --b)
      for (int w = 0; w < words; ++w)
        suffix_any[static_cast<std::size_t>(b) * words + w] =
            covers[static_cast<std::size_t>(b) * words + w] |
            suffix_any[static_cast<std::size_t>(b + 1) * words + w];
  }
};

inline int popcount_words(const std::uint64_t* w, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i) c += std::popcount(w[i]);
  return c;
}

inline bool all_zero(const std::uint64_t* w, int n) {
  for (int i = 0; i < n; ++i)
    if (w[i]) return false;
  return true;
}

inline int popcount_and(const std::uint64_t* a, const std::uint64_t* b, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

inline CoverProblem build_cover_r(GroundParams p) {
  CoverProblem P;
  P.params = p;
  P.blocks = all_subsets_of_size(p.ell, p.k);
  const auto targets = all_subsets_of_size(p.ell, p.k - 1);
  P.n_targets = static_cast<int>(targets.size());
  P.words = (P.n_targets + 63) / 64;
  P.covers.assign(P.blocks.size() * P.words, 0);
  for (std::size_t b = 0; b < P.blocks.size(); ++b)
    for (int t = 0; t < P.n_targets; ++t)
      if (!P.blocks[b].intersects(targets[t]))
        P.covers[b * P.words + t / 64] |= 1ull << (t % 64);
  P.finish();
  return P;
}

inline CoverProblem build_cover_m(GroundParams p) {
  CoverProblem P;
  P.params = p;
  P.blocks = all_subsets_of_size(p.ell, p.k);
  P.n_targets = 1 << (p.ell - 1);  // subsets of [ell] containing element 1
  P.words = (P.n_targets + 63) / 64;
  P.covers.assign(P.blocks.size() * P.words, 0);
  for (std::size_t b = 0; b < P.blocks.size(); ++b) {
    const ElemSet f = P.blocks[b];
    for (int t = 0; t < P.n_targets; ++t) {
      const ElemSet rep(1ull | (static_cast<std::uint64_t>(t) << 1));
      if (f.subset_of(rep) || !f.intersects(rep))
        P.covers[b * P.words + t / 64] |= 1ull << (t % 64);
    }
  }
  P.finish();
  return P;
}

// Depth-limited ordered DFS: blocks are added in increasing lex order, every
// added block must cover something new, and prefixes of bounded size are
// required to be orbit-least.  Any sorted prefix of an orbit-least family is
// itself orbit-least, so the pruning keeps the lex-least optimal family and
// the first solution found is exactly that family.
struct DepthSearch {
  const CoverProblem& P;
  int orbit_max_size;
  std::chrono::steady_clock::time_point deadline;
  std::function<bool()> external_cancel;

  std::uint64_t nodes = 0;
  bool budget_hit = false;
  bool cancelled = false;
  bool counting = false;
  std::int64_t solutions_count = 0;
  std::vector<int> chosen;
  std::vector<ElemSet> solution;
  std::vector<std::uint64_t> unc_stack;

  // max_depth bounds recursion so the uncovered-set stack can be preallocated
  // (resizing mid-search would invalidate parent frames' pointers).
  DepthSearch(const CoverProblem& p, int orbit_max, std::chrono::steady_clock::time_point dl,
              int max_depth)
      : P(p), orbit_max_size(orbit_max), deadline(dl) {
    unc_stack.assign(static_cast<std::size_t>(max_depth + 4) * P.words, 0);
  }

  bool prefix_orbit_least() const {
    std::vector<ElemSet> blocks;
    blocks.reserve(chosen.size());
    for (int id : chosen) blocks.push_back(P.blocks[id]);
    return is_orbit_least(SetFamily(P.params, std::move(blocks)));
  }

  bool dfs(int last, int depth_left, const std::uint64_t* unc) {
    ++nodes;
    if ((nodes & 1023u) == 1) {  // checks the very first node, so a spent budget aborts at once
      if (std::chrono::steady_clock::now() > deadline) budget_hit = true;
      if (external_cancel && external_cancel()) cancelled = true;
    }
    if (budget_hit || cancelled) return false;
    const int W = P.words;
    if (all_zero(unc, W)) {
      if (counting) {
        ++solutions_count;
        return false;
      }
      solution.clear();
      for (int id : chosen) solution.push_back(P.blocks[id]);
      return true;
    }
    if (depth_left == 0) return false;

    const int nb = static_cast<int>(P.blocks.size());
    const std::uint64_t* suf = P.suffix(last + 1);
    for (int w = 0; w < W; ++w)
      if (unc[w] & ~suf[w]) return false;

    int max_cov = 0;
    for (int b = last + 1; b < nb; ++b) {
      const int c = popcount_and(P.cover(b), unc, W);
      if (c > max_cov) max_cov = c;
    }
    if (max_cov == 0) return false;
    if ((popcount_words(unc, W) + max_cov - 1) / max_cov > depth_left) return false;

    const std::size_t level = chosen.size() + 1;
    for (int b = last + 1; b < nb; ++b) {
      const std::uint64_t* cov = P.cover(b);
      bool useful = false;
      for (int w = 0; w < W; ++w)
        if (cov[w] & unc[w]) {
          useful = true;
          break;
        }
      if (!useful) continue;
      chosen.push_back(b);
      if (static_cast<int>(chosen.size()) >= 2 &&
          static_cast<int>(chosen.size()) <= orbit_max_size && !prefix_orbit_least()) {
        chosen.pop_back();
        continue;
      }
      std::uint64_t* next = unc_stack.data() + level * W;
      for (int w = 0; w < W; ++w) next[w] = unc[w] & ~cov[w];
      if (dfs(b, depth_left - 1, next)) return true;
      chosen.pop_back();
      if (budget_hit || cancelled) return false;
    }
    return false;
  }
};

struct DepthOutcome {
  enum class St { Found, Refuted, Budget } st = St::Refuted;
  std::vector<ElemSet> solution;
  std::uint64_t nodes = 0;
};

// One iterative-deepening layer.  The first block is pinned to {1..k} (every
// family is isomorphic to one containing it, and the lex-least optimum starts
// with it); the second-block branches become parallel tasks.  Tasks are
// lex-ordered, so the earliest task that finds a solution holds the lex-least
// one; later tasks are cancelled, earlier ones always run to completion.
inline DepthOutcome search_depth(const CoverProblem& P, int depth, int orbit_cap, int threads,
                                 std::chrono::steady_clock::time_point deadline) {
  DepthOutcome out;
  out.nodes = 1;
  const int W = P.words;
  const int nb = static_cast<int>(P.blocks.size());

  std::vector<std::uint64_t> unc0(W);
  {
    // all targets, minus block 0's coverage
    for (int t = 0; t < P.n_targets; ++t) unc0[t / 64] |= 1ull << (t % 64);
    const std::uint64_t* cov0 = P.cover(0);
    for (int w = 0; w < W; ++w) unc0[w] &= ~cov0[w];
  }
  if (all_zero(unc0.data(), W)) {
    out.st = DepthOutcome::St::Found;
    out.solution = {P.blocks[0]};
    return out;
  }
  if (depth - 1 == 0) return out;

  const std::uint64_t* suf = P.suffix(1);
  for (int w = 0; w < W; ++w)
    if (unc0[w] & ~suf[w]) return out;

  int max_cov = 0;
  for (int b = 1; b < nb; ++b) max_cov = std::max(max_cov, popcount_and(P.cover(b), unc0.data(), W));
  if (max_cov == 0) return out;
  if ((popcount_words(unc0.data(), W) + max_cov - 1) / max_cov > depth - 1) return out;

  std::vector<int> tasks;
  for (int b = 1; b < nb; ++b) {
    if (popcount_and(P.cover(b), unc0.data(), W) == 0) continue;
    if (orbit_cap >= 2) {
      if (!is_orbit_least(SetFamily(P.params, {P.blocks[0], P.blocks[b]}))) continue;
    }
    tasks.push_back(b);
  }
  if (tasks.empty()) return out;

  struct TaskResult {
    bool ran = false;
    bool found = false;
    bool budget = false;
    std::uint64_t nodes = 0;
    std::vector<ElemSet> solution;
  };
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> first_found{INT_MAX};
  const int nthreads = std::clamp<int>(threads, 1, static_cast<int>(tasks.size()));

  auto run_task = [&](std::size_t i) {
    if (static_cast<int>(i) > first_found.load(std::memory_order_relaxed)) return;
    DepthSearch s(P, orbit_cap, deadline, depth);
    s.external_cancel = [&first_found, i]() {
      return first_found.load(std::memory_order_relaxed) < static_cast<int>(i);
    };
    const int b = tasks[i];
    s.chosen = {0, b};
    std::vector<std::uint64_t> unc1(W);
    const std::uint64_t* cov = P.cover(b);
    for (int w = 0; w < W; ++w) unc1[w] = unc0[w] & ~cov[w];
    const bool found = s.dfs(b, depth - 2, unc1.data());
    TaskResult& r = results[i];
    r.ran = !s.cancelled;
    r.found = found;
    r.budget = s.budget_hit;
    r.nodes = s.nodes;
    if (found) {
      r.solution = std::move(s.solution);
      int cur = first_found.load();
      while (static_cast<int>(i) < cur && !first_found.compare_exchange_weak(cur, static_cast<int>(i))) {
      }
    }
  };

  if (nthreads == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (first_found.load() != INT_MAX) break;
      run_task(i);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_task(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  const int winner = first_found.load();
  if (winner != INT_MAX) {
    for (int i = 0; i <= winner; ++i) out.nodes += results[i].nodes;
    out.st = DepthOutcome::St::Found;
    out.solution = std::move(results[winner].solution);
    return out;
  }
  bool budget = false;
  for (const TaskResult& r : results) {
    out.nodes += r.nodes;
    budget = budget || r.budget;
  }
  out.st = budget ? DepthOutcome::St::Budget : DepthOutcome::St::Refuted;
  return out;
}

inline int ceil_to_int(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return static_cast<int>((num + den - 1) / den);
}

inline std::vector<int> greedy_cover(const CoverProblem& P) {
  const int W = P.words;
  std::vector<std::uint64_t> unc(W, 0);
  for (int t = 0; t < P.n_targets; ++t) unc[t / 64] |= 1ull << (t % 64);
  std::vector<int> picked;
  while (!all_zero(unc.data(), W)) {
    int best = -1, best_c = 0;
    for (int b = 0; b < static_cast<int>(P.blocks.size()); ++b) {
      const int c = popcount_and(P.cover(b), unc.data(), W);
      if (c > best_c) {
        best_c = c;
        best = b;
      }
    }
    picked.push_back(best);
    const std::uint64_t* cov = P.cover(best);
    for (int w = 0; w < W; ++w) unc[w] &= ~cov[w];
  }
  return picked;
}

inline ExtremalResult compute_extremal(Quantity q, GroundParams p, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline =
      t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(opts.budget_seconds));
  ExtremalResult res;
  res.quantity = q;
  res.params = p;

  auto elapsed = [&]() { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  if (p.ell <= 2 * p.k - 2) {
    res.kind = ExtremalResult::Kind::Infinite;
    res.stats.seconds = elapsed();
    return res;
  }

  const CoverProblem P = q == Quantity::R ? build_cover_r(p) : build_cover_m(p);
  const int orbit_cap = p.ell <= 9 ? 4 : 1;

  int max_cov = 0;
  for (int b = 0; b < static_cast<int>(P.blocks.size()); ++b)
    max_cov = std::max(max_cov, popcount_words(P.cover(b), P.words));
  int lb = (P.n_targets + max_cov - 1) / max_cov;
  if (q == Quantity::R) lb = std::max({lb, p.k, ceil_to_int(lower_bound_r(p).exact)});
  lb = std::max(lb, 2);

  const std::vector<int> greedy = greedy_cover(P);
  const int ub = static_cast<int>(greedy.size());

  for (int d = lb; d <= ub; ++d) {
    if (opts.progress)
      opts.progress("depth " + std::to_string(d) + " of at most " + std::to_string(ub));
    DepthOutcome out = search_depth(P, d, orbit_cap, opts.threads, deadline);
    res.stats.nodes += out.nodes;
    if (out.st == DepthOutcome::St::Found) {
      res.kind = ExtremalResult::Kind::Exact;
      res.value = d;
      res.witness = SetFamily(p, std::move(out.solution));
      if (opts.count_witnesses && p.ell <= 9) {
        DepthSearch counter(P, d, deadline, d);
        counter.counting = true;
        counter.chosen = {0};
        std::vector<std::uint64_t> unc0(P.words, 0);
        for (int t = 0; t < P.n_targets; ++t) unc0[t / 64] |= 1ull << (t % 64);
        const std::uint64_t* cov0 = P.cover(0);
        for (int w = 0; w < P.words; ++w) unc0[w] &= ~cov0[w];
        if (all_zero(unc0.data(), P.words)) {
          res.canonical_witness_count = 1;
        } else {
          counter.dfs(0, d - 1, unc0.data());
          res.stats.nodes += counter.nodes;
          if (!counter.budget_hit) res.canonical_witness_count = counter.solutions_count;
        }
      }
      break;
    }
    if (out.st == DepthOutcome::St::Budget) {
      res.kind = ExtremalResult::Kind::Inconclusive;
      res.lower = d;
      res.upper = ub;
      break;
    }
  }
  res.stats.seconds = elapsed();
  return res;
}

}  // namespace detail

/// Exact R(k,ell): the smallest k-uniform family over [ell] that no
/// (k-1)-subset of [ell] can hit entirely.  Infinite for ell <= 2k-2.
inline ExtremalResult compute_r(GroundParams p, const SolveOptions& opts = {}) {
  if (p.k < 2 || p.ell > 12)
    throw UnsupportedParameters("compute_r: exact mode needs 2 <= k <= ell <= 12");
  return detail::compute_extremal(Quantity::R, p, opts);
}

/// Exact M(k,ell): the smallest k-uniform family over [ell] without Property B.
inline ExtremalResult compute_m(GroundParams p, const SolveOptions& opts = {}) {
  if (p.k < 2 || p.ell > 9)
    throw UnsupportedParameters("compute_m: exact mode needs 2 <= k <= ell <= 9");
  return detail::compute_extremal(Quantity::M, p, opts);
}

/// Brute-force R oracle: enumerates every subfamily by increasing cardinality
/// with no pruning or symmetry reduction.  Test harness only.
inline ExtremalResult naive_r_oracle(GroundParams p) {
  const auto pool = all_subsets_of_size(p.ell, p.k);
  if (pool.size() > 20 || p.k > 3)
    throw UnsupportedParameters("naive_r_oracle: needs C(ell,k) <= 20 and k <= 3");
  const auto t0 = std::chrono::steady_clock::now();
  ExtremalResult res;
  res.quantity = Quantity::R;
  res.params = p;
  const int nb = static_cast<int>(pool.size());
  for (int c = 1; c <= nb; ++c) {
    ElemSet pick = first_subset_of_size(c);
    do {
      std::vector<ElemSet> blocks;
      for (int i : pick.elements()) blocks.push_back(pool[i - 1]);
      SetFamily fam(p, std::move(blocks));
      ++res.stats.nodes;
      if (!has_property_k(fam)) {
        res.kind = ExtremalResult::Kind::Exact;
        res.value = c;
        res.witness = std::move(fam);
        res.stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
      }
    } while (next_subset_lex(pick, nb));
  }
  res.kind = ExtremalResult::Kind::Infinite;
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace palette
