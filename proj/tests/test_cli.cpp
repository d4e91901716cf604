#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <sstream>
#include <sys/wait.h>
#include <vector>
#include <cstdio>
#include <fstream>
#include <string>

#include "treewalk/graph.hpp"

using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& args) {
  std::string cmd = std::string(TREEWALK_BIN_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/treewalk_cli_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const std::string kTrianglePath =
    write_temp("triangle.txt", "3 3\n0 1 1\n1 2 2\n0 2 3\n");
const std::string kK4Path =
    write_temp("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
const std::string kDisconnectedPath = write_temp("disc.txt", "4 2\n0 1\n2 3\n");
const std::string kTwoPairsPath = write_temp(
    "pairs.json", R"({"n": 4, "k": 2, "entries": [[[0,1],1.0],[[2,3],1.0]]})");
const std::string kU24Path = write_temp(
    "u24.json",
    R"({"n":4,"k":2,"entries":[[[0,1],1],[[0,2],1],[[0,3],1],[[1,2],1],[[1,3],1],[[2,3],1]]})");

}  // namespace

TEST_CASE("sample emits valid trees deterministically") {
  std::string args = "sample --graph " + kTrianglePath + " --epsilon 0.1 --seed 7 --count 2";
  auto first = run_command(args);
  CHECK(first.exit_code == 0);
  auto second = run_command(args);
  CHECK(second.output == first.output);  // byte identical under a fixed seed

  treewalk::WeightedGraph tri = treewalk::load_graph_file(kTrianglePath);
  std::istringstream lines(first.output);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::vector<int> tree;
    int id;
    while (fields >> id) tree.push_back(id);
    CHECK(treewalk::is_spanning_tree(tri, tree));
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("sample honors --steps 0 and --format endpoints") {
  auto result = run_command("sample --graph " + kK4Path + " --steps 0 --format endpoints");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find('-') != std::string::npos);
}

TEST_CASE("usage and validation exit codes") {
  CHECK(run_command("sample").exit_code == 2);            // missing --graph
  CHECK(run_command("wiggle").exit_code == 2);            // unknown command
  CHECK(run_command("sample --graph /nonexistent.txt").exit_code == 1);
  CHECK(run_command("sample --graph " + kDisconnectedPath).exit_code == 1);
  CHECK(run_command("bench").exit_code == 2);             // missing --sizes
  auto help = run_command("--help");
  CHECK(help.exit_code == 0);
}

TEST_CASE("verify reports the documented fields") {
  auto result = run_command("verify --graph " + kTrianglePath +
                            " --samples 20000 --epsilon 0.05 --seed 3");
  CHECK(result.exit_code == 0);
  json report = json::parse(result.output);
  CHECK(report.contains("exact_support"));
  CHECK(report.contains("empirical_tv"));
  CHECK(report.contains("epsilon"));
  CHECK(report.contains("pass"));
  CHECK(report["exact_support"] == 3);
  CHECK(report["pass"] == true);
  CHECK(report["empirical_tv"].get<double>() <= 0.05);

  // oversized graphs are a validation failure
  auto capped = run_command("verify --graph " + kK4Path + " --edge-cap 3 --samples 10");
  CHECK(capped.exit_code == 1);
}

TEST_CASE("analyze exchange emits the report schema") {
  auto result = run_command("analyze exchange --graph " + kK4Path);
  CHECK(result.exit_code == 0);
  json report = json::parse(result.output);
  CHECK(report["alpha_min"] == 1.0);
  CHECK(report["k_squared"] == 9.0);
  CHECK(report.contains("witness"));
  CHECK(report.contains("violations"));

  auto inf = run_command("analyze exchange --density " + kTwoPairsPath);
  CHECK(inf.exit_code == 0);
  CHECK(json::parse(inf.output)["alpha_min"] == "inf");
}

TEST_CASE("analyze walk-exact and hessian") {
  auto walk = run_command("analyze walk-exact --density " + kU24Path);
  CHECK(walk.exit_code == 0);
  json wreport = json::parse(walk.output);
  CHECK(wreport["stationarity_err"].get<double>() <= 1e-12);
  CHECK(wreport["kl_contraction_pass"] == true);
  CHECK(wreport["pinsker_pass"] == true);

  auto hessian = run_command("analyze hessian --density " + kTwoPairsPath);
  CHECK(hessian.exit_code == 0);
  json hreport = json::parse(hessian.output);
  CHECK(hreport["pass"] == false);
  CHECK(hreport["max_positive_eigs"] == 2);

  auto good = run_command("analyze hessian --graph " + kK4Path);
  CHECK(json::parse(good.output)["pass"] == true);

  // exactly one input source is required
  auto both = run_command("analyze hessian --graph " + kK4Path + " --density " + kU24Path);
  CHECK(both.exit_code == 1);
}

TEST_CASE("bench emits one row per size") {
  auto result = run_command("bench --sizes 64,128 --epsilon 0.2 --graph-family grid --seed 1");
  CHECK(result.exit_code == 0);
  json rows = json::parse(result.output);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.contains("n_edges"));
    CHECK(row.contains("steps"));
    CHECK(row.contains("wall_seconds"));
    CHECK(row.contains("seconds_per_step"));
    CHECK(row["wall_seconds"].get<double>() >= 0.0);
  }

  auto single = run_command("bench --sizes 60 --epsilon 0.2 --seed 9");
  json one = json::parse(single.output);
  CHECK(one.size() == 1);
  CHECK(one[0]["n_edges"] == 60);
}
