#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "palette/choosability.hpp"
#include "palette/extremal.hpp"
#include "palette/graph_enum.hpp"

namespace palette {

// Verification table for R(3,ell), ell = 4..9, against the built-in reference
// row (infinite, 10, 8, 5, 4, 3).
struct TableR3 {
  struct Entry {
    int ell = 0;
    std::optional<int> expected;  // empty = infinite
    ExtremalResult result;
    bool matches = false;
  };
  std::vector<Entry> entries;
  bool all_match = true;
  bool all_exact = true;
  double seconds = 0;
};

inline TableR3 table_r3(const SolveOptions& opts = {}) {
  static const std::optional<int> expected[6] = {std::nullopt, 10, 8, 5, 4, 3};
  const auto t0 = std::chrono::steady_clock::now();
  TableR3 table;
  for (int ell = 4; ell <= 9; ++ell) {
    SolveOptions entry_opts = opts;
    const double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    entry_opts.budget_seconds = std::max(0.0, opts.budget_seconds - used);
    TableR3::Entry e;
    e.ell = ell;
    e.expected = expected[ell - 4];
    e.result = compute_r(GroundParams(3, ell), entry_opts);
    switch (e.result.kind) {
      case ExtremalResult::Kind::Exact:
        e.matches = e.expected && *e.expected == e.result.value;
        break;
      case ExtremalResult::Kind::Infinite:
        e.matches = !e.expected;
        break;
      case ExtremalResult::Kind::Inconclusive:
        e.matches = false;
        table.all_exact = false;
        break;
    }
    table.all_match = table.all_match && e.matches;
    table.entries.push_back(std::move(e));
  }
  table.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return table;
}

// Scan all graphs up to isomorphism with at most n_max vertices: every
// (2,3)-choosable one must be 3-choosable.
struct Prop15Report {
  int n_max = 0;
  long graphs_scanned = 0;
  long choosable_23 = 0;
  long violations = 0;
  long skipped = 0;
  std::vector<Graph> counterexamples;
  double seconds = 0;
};

inline Prop15Report scan_prop15(int n_max, const ChoosabilityOptions& opts = {}) {
  if (n_max < 1 || n_max > 6)
    throw UnsupportedParameters("scan_prop15: needs 1 <= n_max <= 6");
  const auto t0 = std::chrono::steady_clock::now();
  Prop15Report report;
  report.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    for (const Graph& g : all_graphs_up_to_iso(n)) {
      ++report.graphs_scanned;
      const ChoosabilityVerdict base = decide_kl_choosable(g, GroundParams(2, 3), opts);
      if (base.status == ChoosabilityStatus::Inconclusive) {
        ++report.skipped;
        continue;
      }
      if (base.status != ChoosabilityStatus::Choosable) continue;
      ++report.choosable_23;
      const ChoosabilityVerdict three = decide_choosable(g, 3, opts);
      if (three.status == ChoosabilityStatus::Inconclusive) {
        ++report.skipped;
      } else if (three.status == ChoosabilityStatus::NotChoosable) {
        ++report.violations;
        report.counterexamples.push_back(g);
      }
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace palette
