// palette_lab: exact computations for list colouring with a bounded palette.
//
// Exit codes: 0 computed/verified, 1 a verification command found a violation,
// 2 budget exhausted (inconclusive), 3 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "palette/bounds.hpp"
#include "palette/choosability.hpp"
#include "palette/extremal.hpp"
#include "palette/gadgets.hpp"
#include "palette/graph_enum.hpp"
#include "palette/json_io.hpp"
#include "palette/recipes.hpp"
#include "palette/set_family.hpp"

namespace {

using namespace palette;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct Common {
  double budget = 60.0;
  int threads = 1;
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "time budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads")
      ->envname("PALETTE_LAB_THREADS")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", c.output, "write the result to a file instead of stdout");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(c.output);
    if (!out) throw std::invalid_argument("cannot open output file " + c.output);
    out << text;
  }
}

void progress_to_stderr(const std::string& line) { std::cerr << "  .. " << line << '\n'; }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file " + path);
  json j;
  in >> j;
  return j;
}

std::string value_str(const ExtremalResult& r) {
  switch (r.kind) {
    case ExtremalResult::Kind::Exact:
      return std::to_string(r.value);
    case ExtremalResult::Kind::Infinite:
      return "infinite";
    default:
      return "inconclusive in [" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]";
  }
}

std::string extremal_text(const ExtremalResult& r) {
  std::string s = (r.quantity == Quantity::R ? "R(" : "M(") + std::to_string(r.params.k) + "," +
                  std::to_string(r.params.ell) + ") = " + value_str(r) + "\n";
  if (r.witness) {
    s += "witness:";
    for (ElemSet b : r.witness->blocks) s += " " + b.str();
    s += "\n";
  }
  if (r.canonical_witness_count)
    s += "canonical optimal witnesses: " + std::to_string(*r.canonical_witness_count) + "\n";
  s += "nodes: " + std::to_string(r.stats.nodes) + ", seconds: " + std::to_string(r.stats.seconds);
  return s;
}

int run_extremal(Quantity q, int k, int ell, const Common& c, bool count_witnesses) {
  SolveOptions opts;
  opts.budget_seconds = c.budget;
  opts.threads = c.threads;
  opts.count_witnesses = count_witnesses;
  opts.progress = progress_to_stderr;
  const ExtremalResult r = q == Quantity::R ? compute_r(GroundParams(k, ell), opts)
                                            : compute_m(GroundParams(k, ell), opts);
  emit(c, c.format == "json" ? json(r).dump(2) : extremal_text(r));
  return r.kind == ExtremalResult::Kind::Inconclusive ? kExitBudget : kExitOk;
}

int run_table(const Common& c, bool verify) {
  SolveOptions opts;
  opts.budget_seconds = c.budget;
  opts.threads = c.threads;
  const TableR3 table = table_r3(opts);

  bool witnesses_ok = true;
  if (verify) {
    for (const auto& e : table.entries)
      if (e.result.kind == ExtremalResult::Kind::Exact && e.result.witness &&
          has_property_k(*e.result.witness))
        witnesses_ok = false;
  }

  if (c.format == "json") {
    json j;
    for (const auto& e : table.entries) {
      const std::string key = std::to_string(e.ell);
      if (e.result.kind == ExtremalResult::Kind::Exact)
        j[key] = e.result.value;
      else if (e.result.kind == ExtremalResult::Kind::Infinite)
        j[key] = "infinite";
      else
        j[key] = "inconclusive";
      j["expected"][key] = e.expected ? json(*e.expected) : json("infinite");
      j["matches"][key] = e.matches;
    }
    j["all_match"] = table.all_match;
    j["seconds"] = table.seconds;
    if (verify) j["witnesses_verified"] = witnesses_ok;
    emit(c, j.dump(2));
  } else {
    std::string s = "ell      ";
    for (const auto& e : table.entries) s += "\t" + std::to_string(e.ell);
    s += "\ncomputed ";
    for (const auto& e : table.entries) s += "\t" + value_str(e.result);
    s += "\nexpected ";
    for (const auto& e : table.entries)
      s += "\t" + (e.expected ? std::to_string(*e.expected) : "infinite");
    s += "\n";
    for (const auto& e : table.entries)
      if (!e.matches)
        s += "MISMATCH at ell=" + std::to_string(e.ell) + ": computed " + value_str(e.result) +
             ", expected " + (e.expected ? std::to_string(*e.expected) : "infinite") + "\n";
    if (verify) s += std::string("witness re-check: ") + (witnesses_ok ? "ok" : "FAILED") + "\n";
    s += "seconds: " + std::to_string(table.seconds);
    emit(c, s);
  }
  if (!table.all_exact) return kExitBudget;
  if (!table.all_match || !witnesses_ok) return kExitViolation;
  return kExitOk;
}

int run_scan(int n_max, const Common& c) {
  ChoosabilityOptions opts;
  opts.budget_seconds = c.budget;
  opts.threads = c.threads;
  const Prop15Report report = scan_prop15(n_max, opts);
  if (c.format == "json") {
    json j{{"n_max", report.n_max},
           {"graphs_scanned", report.graphs_scanned},
           {"choosable_2_3", report.choosable_23},
           {"violations", report.violations},
           {"skipped", report.skipped},
           {"seconds", report.seconds}};
    for (const Graph& g : report.counterexamples) j["counterexamples"].push_back(g);
    emit(c, j.dump(2));
  } else {
    std::string s = "graphs scanned (n <= " + std::to_string(report.n_max) +
                    "): " + std::to_string(report.graphs_scanned) + "\n(2,3)-choosable: " +
                    std::to_string(report.choosable_23) + "\nviolations: " +
                    std::to_string(report.violations) + "\nskipped: " +
                    std::to_string(report.skipped) + "\nseconds: " + std::to_string(report.seconds);
    emit(c, s);
  }
  if (report.violations > 0) return kExitViolation;
  if (report.skipped > 0) return kExitBudget;
  return kExitOk;
}

int run_check(PropertyKind kind, const std::string& input, const Common& c) {
  const SetFamily fam = load_json(input).get<SetFamily>();
  const auto w = kind == PropertyKind::B ? has_property_b(fam) : has_property_k(fam);
  if (c.format == "json") {
    json j{{"property", kind == PropertyKind::B ? "B" : "K"}, {"has_property", w.has_value()}};
    if (w) j["witness"] = elem_set_to_json(w->witness);
    emit(c, j.dump(2));
  } else {
    std::string s = std::string("property ") + (kind == PropertyKind::B ? "B" : "K") + ": " +
                    (w ? "yes, witness " + w->witness.str() : "no");
    emit(c, s);
  }
  return kExitOk;
}

std::string verdict_text(const ChoosabilityVerdict& v) {
  std::string s;
  switch (v.status) {
    case ChoosabilityStatus::Choosable:
      s = "choosable";
      break;
    case ChoosabilityStatus::NotChoosable:
      s = "not choosable";
      break;
    default:
      s = "inconclusive";
  }
  s += " (" + std::to_string(v.assignments_checked) + " reduced assignments checked)";
  if (v.witness) {
    s += "\nwitness lists:";
    for (ElemSet l : v.witness->lists) s += " " + l.str();
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact bounded-palette list colouring laboratory"};
  app.require_subcommand(1);

  // extremal numbers
  Common rc;
  int rk = 0, rell = 0;
  bool r_count = false;
  CLI::App* rcmd = app.add_subcommand("r", "compute R(k,ell) exactly");
  rcmd->add_option("--k", rk, "block size")->required();
  rcmd->add_option("--ell", rell, "palette size")->required();
  rcmd->add_flag("--count-witnesses", r_count, "also count canonical optimal witnesses");
  add_common(rcmd, rc);

  Common mc;
  int mk = 0, mell = 0;
  bool m_count = false;
  CLI::App* mcmd = app.add_subcommand("m", "compute M(k,ell) exactly");
  mcmd->add_option("--k", mk, "block size")->required();
  mcmd->add_option("--ell", mell, "palette size")->required();
  mcmd->add_flag("--count-witnesses", m_count, "also count canonical optimal witnesses");
  add_common(mcmd, mc);

  Common tc;
  bool t_verify = false;
  CLI::App* tcmd = app.add_subcommand("table-r3", "compute R(3,ell) for ell=4..9 and verify the row");
  tcmd->add_flag("--verify", t_verify, "re-check witnesses against the property checker");
  add_common(tcmd, tc);
  tc.budget = 120.0;

  Common sc;
  int s_nmax = 5;
  CLI::App* scmd = app.add_subcommand("scan-prop15", "verify (2,3)-choosable => 3-choosable on small graphs");
  scmd->add_option("--n-max", s_nmax, "largest vertex count")->check(CLI::Range(1, 6));
  add_common(scmd, sc);

  Common cbc, ckc;
  std::string cb_input, ck_input;
  CLI::App* cbcmd = app.add_subcommand("check-b", "test a family file for Property B");
  cbcmd->add_option("--input", cb_input, "family JSON file")->required();
  add_common(cbcmd, cbc);
  CLI::App* ckcmd = app.add_subcommand("check-k", "test a family file for Property K");
  ckcmd->add_option("--input", ck_input, "family JSON file")->required();
  add_common(ckcmd, ckc);

  Common chc;
  std::string ch_graph;
  int ch_k = 0, ch_ell = 0;
  std::uint64_t ch_limit = 100'000'000;
  CLI::App* chcmd = app.add_subcommand("choosable", "decide (k,ell)-choosability of a graph file");
  chcmd->add_option("--graph", ch_graph, "graph JSON file")->required();
  chcmd->add_option("--k", ch_k, "list size")->required();
  chcmd->add_option("--ell", ch_ell, "palette size (default: plain k-choosability)");
  chcmd->add_option("--limit", ch_limit, "reduced-assignment exhaustiveness threshold");
  add_common(chcmd, chc);

  Common choice_c;
  std::string choice_graph;
  CLI::App* choice_cmd = app.add_subcommand("choice", "exact choice number via the palette reduction");
  choice_cmd->add_option("--graph", choice_graph, "graph JSON file")->required();
  add_common(choice_cmd, choice_c);

  // gadgets
  CLI::App* gcmd = app.add_subcommand("gadget", "constructive assignments");
  gcmd->require_subcommand(1);

  Common gkc;
  int gk_m = 2;
  std::string gk_out_graph, gk_out_assignment;
  CLI::App* gkcmd = gcmd->add_subcommand("kmm", "the K_{m,m^m} assignment over palette [m^2]");
  gkcmd->add_option("--m", gk_m, "left side size")->required();
  gkcmd->add_option("--out-graph", gk_out_graph, "write the graph JSON here");
  gkcmd->add_option("--out-assignment", gk_out_assignment, "write the assignment JSON here");
  add_common(gkcmd, gkc);

  Common ghc;
  std::string gh_family, gh_out_graph, gh_out_assignment;
  int gh_n1 = 0, gh_n2 = 0;
  CLI::App* ghcmd = gcmd->add_subcommand("hard-bipartite", "hard assignment from a non-Property-B family");
  ghcmd->add_option("--family", gh_family, "family JSON file")->required();
  ghcmd->add_option("--n1", gh_n1, "left side size (default |family|)");
  ghcmd->add_option("--n2", gh_n2, "right side size (default |family|)");
  ghcmd->add_option("--out-graph", gh_out_graph, "write the graph JSON here");
  ghcmd->add_option("--out-assignment", gh_out_assignment, "write the assignment JSON here");
  add_common(ghcmd, ghc);

  Common gcc;
  std::string gc_graph, gc_assignment;
  CLI::App* gccmd = gcmd->add_subcommand("colour-by-k", "colour a bipartite graph through a transversal");
  gccmd->add_option("--graph", gc_graph, "graph JSON file")->required();
  gccmd->add_option("--assignment", gc_assignment, "assignment JSON file")->required();
  add_common(gccmd, gcc);

  // bounds
  Common bc;
  int b_k = 0, b_ell = 0, b_m = 0;
  CLI::App* bcmd = app.add_subcommand("bounds", "evaluate the closed-form bounds for (k,ell)");
  bcmd->add_option("--k", b_k, "list size")->required();
  bcmd->add_option("--ell", b_ell, "palette size")->required();
  bcmd->add_option("--m-value", b_m, "M(k,ell) to plug into the degree bound");
  add_common(bcmd, bc);

  Common cvc;
  double cv_from = 2.05, cv_to = 4.0, cv_step = 0.05;
  CLI::App* cvcmd = app.add_subcommand("curve", "emit the rate comparison curves as CSV");
  cvcmd->add_option("--b-from", cv_from, "grid start (> 2)");
  cvcmd->add_option("--b-to", cv_to, "grid end");
  cvcmd->add_option("--step", cv_step, "grid step");
  add_common(cvcmd, cvc);

  Common crc;
  CLI::App* crcmd = app.add_subcommand("crossover", "palette ratio where the two upper-bound rates meet");
  add_common(crcmd, crc);

  Common rtc;
  double rt_b = 3.0;
  CLI::App* rtcmd = app.add_subcommand("rates", "evaluate all rate functions at one b");
  rtcmd->add_option("--b", rt_b, "palette ratio (> 2)")->required();
  add_common(rtcmd, rtc);

  Common cgc;
  double cg_b = 3.0;
  int cg_kmax = 100;
  CLI::App* cgcmd = app.add_subcommand("converge", "log lower_bound_R(k, floor(b k))/k for k = 2..k-max");
  cgcmd->add_option("--b", cg_b, "palette ratio (> 2)")->required();
  cgcmd->add_option("--k-max", cg_kmax, "largest k");
  add_common(cgcmd, cgc);

  try {
    app.parse(argc, argv);

    if (rcmd->parsed()) return run_extremal(Quantity::R, rk, rell, rc, r_count);
    if (mcmd->parsed()) return run_extremal(Quantity::M, mk, mell, mc, m_count);
    if (tcmd->parsed()) return run_table(tc, t_verify);
    if (scmd->parsed()) return run_scan(s_nmax, sc);
    if (cbcmd->parsed()) return run_check(PropertyKind::B, cb_input, cbc);
    if (ckcmd->parsed()) return run_check(PropertyKind::K, ck_input, ckc);

    if (chcmd->parsed()) {
      const Graph g = load_json(ch_graph).get<Graph>();
      ChoosabilityOptions opts;
      opts.budget_seconds = chc.budget;
      opts.threads = chc.threads;
      opts.exhaustive_limit = ch_limit;
      opts.progress = progress_to_stderr;
      const ChoosabilityVerdict v = ch_ell > 0
                                        ? decide_kl_choosable(g, GroundParams(ch_k, ch_ell), opts)
                                        : decide_choosable(g, ch_k, opts);
      emit(chc, chc.format == "json" ? json(v).dump(2) : verdict_text(v));
      return v.status == ChoosabilityStatus::Inconclusive ? kExitBudget : kExitOk;
    }

    if (choice_cmd->parsed()) {
      const Graph g = load_json(choice_graph).get<Graph>();
      ChoosabilityOptions opts;
      opts.budget_seconds = choice_c.budget;
      opts.threads = choice_c.threads;
      const ChoiceNumberResult r = choice_number(g, opts);
      if (choice_c.format == "json")
        emit(choice_c, json{{"choice_number", r.value},
                            {"exact", r.exact},
                            {"assignments_checked", r.assignments_checked}}
                           .dump(2));
      else
        emit(choice_c, (r.exact ? "choice number: " : "inconclusive at k = ") +
                           std::to_string(r.value) + " (" +
                           std::to_string(r.assignments_checked) + " assignments checked)");
      return r.exact ? kExitOk : kExitBudget;
    }

    auto emit_gadget = [](const GadgetOutput& out, const Common& c, const std::string& out_graph,
                          const std::string& out_assignment) {
      if (!out_graph.empty()) {
        std::ofstream f(out_graph);
        f << json(out.graph).dump(2) << '\n';
      }
      if (!out_assignment.empty()) {
        std::ofstream f(out_assignment);
        f << json(out.assignment).dump(2) << '\n';
      }
      emit(c, json(out).dump(2));
      return kExitOk;
    };

    if (gkcmd->parsed()) return emit_gadget(kmm_assignment(gk_m), gkc, gk_out_graph, gk_out_assignment);
    if (ghcmd->parsed()) {
      const SetFamily fam = load_json(gh_family).get<SetFamily>();
      return emit_gadget(hard_bipartite_assignment(fam, gh_n1, gh_n2), ghc, gh_out_graph,
                         gh_out_assignment);
    }
    if (gccmd->parsed()) {
      const Graph g = load_json(gc_graph).get<Graph>();
      const ListAssignment l = load_json(gc_assignment).get<ListAssignment>();
      const Colouring col = property_k_colouring(g, l);
      if (gcc.format == "json")
        emit(gcc, json(col).dump(2));
      else {
        std::string s = "colours:";
        for (int x : col.colour) s += " " + std::to_string(x);
        emit(gcc, s);
      }
      return kExitOk;
    }

    if (bcmd->parsed()) {
      int m_value = b_m;
      if (m_value == 0) {
        if (b_ell == 2 * b_k - 1) {
          m_value = static_cast<int>(binomial(2 * b_k - 1, b_k).convert_to<long long>());
        } else {
          SolveOptions opts;
          opts.budget_seconds = bc.budget;
          opts.threads = bc.threads;
          const ExtremalResult m = compute_m(GroundParams(b_k, b_ell), opts);
          if (m.kind != ExtremalResult::Kind::Exact)
            throw std::domain_error("bounds: supply --m-value (M(k,ell) not computed in budget)");
          m_value = m.value;
        }
      }
      const BoundReport r = bound_report(GroundParams(b_k, b_ell), m_value);
      if (bc.format == "json")
        emit(bc, json(r).dump(2));
      else {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "exp lower: %.6f\nfactorial lower: %s (= %.6f)\nfactorial upper: %.6f\n"
                      "min degree D (M=%d): %.3f",
                      r.exp_lower, r.factorial_lower.exact.str().c_str(),
                      r.factorial_lower.approx, r.factorial_upper.approx, r.m_value_used,
                      r.min_degree_d);
        emit(bc, buf);
      }
      return kExitOk;
    }

    if (cvcmd->parsed()) {
      emit(cvc, emit_curves(cv_from, cv_to, cv_step));
      return kExitOk;
    }
    if (crcmd->parsed()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9f", crossover());
      emit(crc, crc.format == "json" ? json{{"crossover", crossover()}}.dump(2) : std::string(buf));
      return kExitOk;
    }
    if (rtcmd->parsed()) {
      const RateFunctions r = eval_rates(rt_b);
      if (rtc.format == "json")
        emit(rtc, json(r).dump(2));
      else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "b=%.6f\nkrsg=%.9f\ncontainers=%.9f\nr_rate=%.9f\nf=%.9f",
                      r.b, r.krsg, r.containers, r.r_rate, r.f);
        emit(rtc, buf);
      }
      return kExitOk;
    }
    if (cgcmd->parsed()) {
      const auto seq = rate_convergence(cg_b, cg_kmax);
      if (cgc.format == "json") {
        emit(cgc, json{{"b", cg_b}, {"values", seq}}.dump(2));
      } else {
        std::string s = "k\tlog(lower_bound)/k";
        for (std::size_t i = 0; i < seq.size(); ++i) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "\n%zu\t%.9f", i + 2, seq[i]);
          s += buf;
        }
        emit(cgc, s);
      }
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
