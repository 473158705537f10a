#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "palette/json_io.hpp"

using nlohmann::json;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PALETTE_LAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/palette_cli_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("cli: extremal values with json and text formats agree") {
  const CmdResult j = run_cli("r --k 3 --ell 7 --format json");
  CHECK(j.exit_code == 0);
  const json parsed = json::parse(j.out);
  CHECK(parsed.at("quantity") == "R");
  CHECK(parsed.at("value") == 5);

  const CmdResult t = run_cli("r --k 3 --ell 7 --format text");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("R(3,7) = 5") != std::string::npos);
}

TEST_CASE("cli: M command and spec example") {
  const CmdResult r = run_cli("m --k 2 --ell 5 --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("value") == 3);
}

TEST_CASE("cli: R(4,7) identity") {
  const CmdResult r = run_cli("r --k 4 --ell 7 --budget 120 --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("value") == 35);
}

TEST_CASE("cli: infinite values serialize as a string") {
  const CmdResult r = run_cli("r --k 3 --ell 4 --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("value") == "infinite");
}

TEST_CASE("cli: invalid parameters exit 3") {
  CHECK(run_cli("r --k 9 --ell 3").exit_code == 3);
  CHECK(run_cli("r --k 2 --ell 13").exit_code == 3);
  CHECK(run_cli("choosable --graph /nonexistent.json --k 2").exit_code == 3);
}

TEST_CASE("cli: table row reports the known ell=6 mismatch against the reference") {
  const CmdResult r = run_cli("table-r3 --format json");
  CHECK(r.exit_code == 1);  // computed row differs from the built-in reference at ell=6
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("4") == "infinite");
  CHECK(parsed.at("5") == 10);
  CHECK(parsed.at("6") == 6);
  CHECK(parsed.at("7") == 5);
  CHECK(parsed.at("8") == 4);
  CHECK(parsed.at("9") == 3);
  CHECK(parsed.at("expected").at("6") == 8);
  CHECK(parsed.at("matches").at("6") == false);
  CHECK(parsed.at("matches").at("5") == true);
  CHECK(parsed.at("all_match") == false);
}

TEST_CASE("cli: exhausted budgets exit 2") {
  const CmdResult r = run_cli("r --k 4 --ell 9 --budget 0.000001 --format json");
  CHECK(r.exit_code == 2);
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("value") == "inconclusive");
  CHECK(parsed.at("lower").get<int>() >= 9);  // the exact transversal bound
  CHECK(parsed.at("lower").get<int>() <= parsed.at("upper").get<int>());
}

TEST_CASE("cli: table verify flag re-checks witnesses") {
  const CmdResult r = run_cli("table-r3 --verify --format json");
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("witnesses_verified") == true);
}

TEST_CASE("cli: property checks on family files") {
  const std::string fam = write_temp("fam_b.json", R"({"ell":4,"k":2,"sets":[[1,2],[3,4]]})");
  const CmdResult b = run_cli("check-b --input " + fam + " --format json");
  CHECK(b.exit_code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb.at("has_property") == true);
  CHECK(jb.at("witness") == json::parse("[1,3]"));

  const std::string tri = write_temp("fam_tri.json", R"({"ell":3,"k":2,"sets":[[1,2],[1,3],[2,3]]})");
  const CmdResult k = run_cli("check-k --input " + tri + " --format json");
  CHECK(k.exit_code == 0);
  CHECK(json::parse(k.out).at("has_property") == false);

  const std::string dup = write_temp("fam_dup.json", R"({"ell":3,"k":2,"sets":[[1,2],[1,2]]})");
  CHECK(run_cli("check-b --input " + dup).exit_code == 3);
}

TEST_CASE("cli: gadget outputs feed the choosability command") {
  const std::string gpath = "/tmp/palette_cli_kmm_graph.json";
  const std::string apath = "/tmp/palette_cli_kmm_assignment.json";
  const CmdResult g =
      run_cli("gadget kmm --m 2 --out-graph " + gpath + " --out-assignment " + apath);
  CHECK(g.exit_code == 0);
  CHECK(json::parse(g.out).at("claim") == "uncolourable");

  const CmdResult dec = run_cli("choosable --graph " + gpath + " --k 2 --ell 4 --format json");
  CHECK(dec.exit_code == 0);
  CHECK(json::parse(dec.out).at("status") == "not_choosable");

  const CmdResult three = run_cli("choosable --graph " + gpath + " --k 3 --format json");
  CHECK(three.exit_code == 0);
  CHECK(json::parse(three.out).at("status") == "choosable");

  const CmdResult choice = run_cli("choice --graph " + gpath + " --format json");
  CHECK(choice.exit_code == 0);
  CHECK(json::parse(choice.out).at("choice_number") == 3);
}

TEST_CASE("cli: colour-by-k gadget") {
  const std::string gpath = write_temp(
      "colour_graph.json", R"({"n":3,"edges":[[0,2],[1,2]],"bipartition":[[0,1],[2]]})");
  const std::string apath = write_temp(
      "colour_assignment.json", R"({"k":3,"ell":9,"lists":[[1,2,3],[4,5,6],[1,4,7]]})");
  const CmdResult r =
      run_cli("gadget colour-by-k --graph " + gpath + " --assignment " + apath + " --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("colours") == json::parse("[1,4,7]"));
}

TEST_CASE("cli: scan finds no violations on tiny graphs") {
  const CmdResult r = run_cli("scan-prop15 --n-max 3 --format json");
  CHECK(r.exit_code == 0);
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("graphs_scanned") == 7);  // 1 + 2 + 4
  CHECK(parsed.at("violations") == 0);
  CHECK(parsed.at("skipped") == 0);
}

TEST_CASE("cli: bounds command uses the binomial identity fallback") {
  const CmdResult r = run_cli("bounds --k 2 --ell 3 --format json");
  CHECK(r.exit_code == 0);
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("m_value") == 3);
  CHECK(std::abs(parsed.at("min_degree_d").get<double>() - 377.2) < 0.3);
}

TEST_CASE("cli: curve output parses as CSV with the documented header") {
  const CmdResult r = run_cli("curve --b-from 2.5 --b-to 3.5 --step 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("b,krsg,containers,r_rate\n", 0) == 0);
  // full-precision doubles round-trip to the pointwise evaluation
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    double b, krsg, containers, r_rate;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &b, &krsg, &containers, &r_rate) == 4);
    const auto exact = palette::eval_rates(b);
    CHECK(krsg == exact.krsg);
    CHECK(containers == exact.containers);
    CHECK(r_rate == exact.r_rate);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("cli: crossover value") {
  const CmdResult r = run_cli("crossover");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(std::strtod(r.out.c_str(), nullptr) - 2.747655083) < 1e-6);
}

TEST_CASE("cli: converge emits the sequence") {
  const CmdResult r = run_cli("converge --b 3 --k-max 10 --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("values").size() == 9);
}

TEST_CASE("cli: identical values across formats for a choosability query") {
  const std::string gpath = write_temp("k33.json", json(palette::complete_bipartite(3, 3)).dump());
  const CmdResult j = run_cli("choosable --graph " + gpath + " --k 2 --ell 3 --format json");
  const CmdResult t = run_cli("choosable --graph " + gpath + " --k 2 --ell 3 --format text");
  CHECK(j.exit_code == 0);
  CHECK(t.exit_code == 0);
  const json parsed = json::parse(j.out);
  CHECK(parsed.at("status") == "not_choosable");
  CHECK(t.out.find("not choosable") != std::string::npos);
  CHECK(t.out.find(std::to_string(parsed.at("assignments_checked").get<std::uint64_t>())) !=
        std::string::npos);
}
