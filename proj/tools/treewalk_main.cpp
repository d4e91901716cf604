// treewalk: approximate random spanning tree sampling via the down-up walk
// on complements of spanning trees, plus exact small-instance analysis.
//
// Exit codes: 0 success, 1 validation failure (bad input, caps), 2 usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "treewalk/densities.hpp"
#include "treewalk/exchange.hpp"
#include "treewalk/generate.hpp"
#include "treewalk/graph.hpp"
#include "treewalk/sampler.hpp"
#include "treewalk/walk.hpp"

namespace {

using nlohmann::json;
using namespace treewalk;

struct SampleArgs {
  std::string graph_path;
  double epsilon = 0.01;
  long long count = 1;
  std::uint64_t seed = 0;
  double constant = 4.0;
  long long steps = -1;  // -1: use the mixing schedule
  std::string format = "ids";
  int jobs = 1;
};

int run_sample(const SampleArgs& args) {
  WeightedGraph g = load_graph_file(args.graph_path);
  WalkConfig config;
  config.epsilon = args.epsilon;
  config.schedule_constant = args.constant;
  config.seed = args.seed;
  if (args.steps >= 0) config.step_override = args.steps;

  auto trees = sample_many(g, config, args.count, args.jobs);
  for (const auto& tree : trees) {
    bool first = true;
    for (int id : tree) {
      if (!first) std::cout << ' ';
      first = false;
      if (args.format == "endpoints") {
        std::cout << g.edge(id).u << '-' << g.edge(id).v;
      } else {
        std::cout << id;
      }
    }
    std::cout << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string graph_path;
  long long samples = 100000;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  double constant = 4.0;
  int jobs = 1;
  int edge_cap = 24;
};

int run_verify(const VerifyArgs& args) {
  WeightedGraph g = load_graph_file(args.graph_path);
  auto exact = enumerate_spanning_trees(g, args.edge_cap);

  double total = 0.0;
  std::map<TreeEdgeSet, double> target;
  for (const auto& [tree, weight] : exact) {
    target[tree] = weight;
    total += weight;
  }

  WalkConfig config;
  config.epsilon = args.epsilon;
  config.schedule_constant = args.constant;
  config.seed = args.seed;
  auto trees = sample_many(g, config, args.samples, args.jobs);

  std::map<TreeEdgeSet, long long> counts;
  for (const auto& tree : trees) ++counts[tree];

  double tv = 0.0;
  for (const auto& [tree, weight] : target) {
    auto it = counts.find(tree);
    double empirical =
        it == counts.end() ? 0.0
                           : static_cast<double>(it->second) / static_cast<double>(args.samples);
    tv += std::abs(empirical - weight / total);
  }
  tv *= 0.5;

  // Conservative multinomial noise scale; see README.
  double stderr_tv = std::sqrt(static_cast<double>(exact.size()) /
                               (4.0 * static_cast<double>(args.samples)));

  json report;
  report["exact_support"] = exact.size();
  report["empirical_tv"] = tv;
  report["epsilon"] = args.epsilon;
  report["pass"] = tv <= args.epsilon + 3.0 * stderr_tv;
  std::cout << report.dump(2) << '\n';
  return report["pass"].get<bool>() ? 0 : 1;
}

struct AnalyzeArgs {
  std::string graph_path;
  std::string density_path;
  std::string dpp_path;
  bool dual = false;
  std::uint64_t seed = 0;
  int points = 20;
  std::size_t support_cap = 5000;
};

std::shared_ptr<SubsetDensity> load_density(const AnalyzeArgs& args) {
  int given = !args.graph_path.empty() + !args.density_path.empty() + !args.dpp_path.empty();
  if (given != 1) throw Error("give exactly one of --graph, --density, --dpp");
  if (!args.graph_path.empty()) {
    WeightedGraph g = load_graph_file(args.graph_path);
    return args.dual ? complement_inverse_density(g) : graphic_basis_density(g);
  }
  if (!args.density_path.empty()) {
    return std::make_shared<TableDensity>(TableDensity::load_file(args.density_path));
  }
  return std::make_shared<DppDensity>(DppDensity::load_file(args.dpp_path));
}

int run_analyze_exchange(const AnalyzeArgs& args) {
  auto d = load_density(args);
  ExchangeReport report = exchange_alpha(*d, args.support_cap);
  std::cout << report.to_json(d->subset_size()) << '\n';
  return 0;
}

int run_analyze_walk_exact(const AnalyzeArgs& args) {
  auto d = load_density(args);
  TransitionMatrix tm = transition_matrix(*d, args.support_cap);
  const auto& mu = tm.stationary;

  DistributionTable mu_next = tm.apply(mu);
  double stationarity_err = 0.0;
  for (std::size_t i = 0; i < mu.prob.size(); ++i) {
    stationarity_err = std::max(stationarity_err, std::abs(mu_next.prob[i] - mu.prob[i]));
  }

  const double k = static_cast<double>(d->subset_size());
  const double shrink = k >= 1.0 ? 1.0 - 1.0 / k : 0.0;
  bool contraction_pass = true;
  bool pinsker_pass = true;
  Rng rng = chain_rng(args.seed, 0xa11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> weights(mu.prob.size());
    for (double& w : weights) w = uniform01(rng);
    auto nu = DistributionTable::from_weights(tm.support, std::move(weights));
    double before = kl_divergence(nu, mu);
    double after = kl_divergence(tm.apply(nu), mu);
    contraction_pass &= after <= shrink * before + 1e-12;
    pinsker_pass &= tv_distance(nu, mu) <= std::sqrt(before / 2.0) + 1e-12;
  }

  json report;
  report["stationarity_err"] = stationarity_err;
  report["kl_contraction_pass"] = contraction_pass;
  report["pinsker_pass"] = pinsker_pass;
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_analyze_hessian(const AnalyzeArgs& args) {
  auto d = load_density(args);
  auto result = logconcavity_necessary_check(*d, args.points, args.seed, args.support_cap);
  json report;
  report["max_positive_eigs"] = result.max_positive_eigenvalues;
  report["pass"] = result.pass;
  std::cout << report.dump(2) << '\n';
  return 0;
}

struct BenchArgs {
  std::vector<int> sizes;
  double epsilon = 0.01;
  std::string family = "random-regular";
  std::uint64_t seed = 0;
  double constant = 4.0;
  bool human = false;
};

int run_bench_cmd(const BenchArgs& args) {
  auto rows = run_bench(args.sizes, args.epsilon, args.constant, args.family, args.seed);
  if (args.human) {
    std::cout << "n_edges vertices steps wall_seconds seconds_per_step\n";
    for (const auto& row : rows) {
      std::cout << row.n_edges << ' ' << row.vertices << ' ' << row.steps << ' '
                << row.wall_seconds << ' ' << row.seconds_per_step << '\n';
    }
    return 0;
  }
  json out = json::array();
  for (const auto& row : rows) {
    json r;
    r["n_edges"] = row.n_edges;
    r["vertices"] = row.vertices;
    r["steps"] = row.steps;
    r["wall_seconds"] = row.wall_seconds;
    r["seconds_per_step"] = row.seconds_per_step;
    out.push_back(r);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Approximate (weighted) uniform spanning tree sampling via the down-up\n"
      "walk on spanning tree complements, with verification and analysis tools."};
  app.require_subcommand(1);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw approximate random spanning trees");
  sample->add_option("--graph", sample_args.graph_path, "edge-list graph file")->required();
  sample->add_option("--epsilon", sample_args.epsilon, "total variation target")
      ->check(CLI::Range(1e-12, 0.9999999));
  sample->add_option("--count", sample_args.count, "number of independent samples")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_args.seed, "RNG seed");
  sample->add_option("--constant", sample_args.constant,
                     "schedule constant C in C*k*ln(k/eps); the mixing bound fixes\n"
                     "the growth rate but not this constant")
      ->check(CLI::PositiveNumber);
  sample->add_option("--steps", sample_args.steps, "override the step schedule (0 = start tree)");
  sample->add_option("--format", sample_args.format, "ids | endpoints")
      ->check(CLI::IsMember({"ids", "endpoints"}));
  sample->add_option("--jobs", sample_args.jobs, "worker threads for --count > 1")
      ->check(CLI::PositiveNumber);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Compare sampled trees against exact enumeration (small graphs)");
  verify->add_option("--graph", verify_args.graph_path, "edge-list graph file")->required();
  verify->add_option("--samples", verify_args.samples, "number of chains")
      ->check(CLI::PositiveNumber);
  verify->add_option("--epsilon", verify_args.epsilon, "total variation target")
      ->check(CLI::Range(1e-12, 0.9999999));
  verify->add_option("--seed", verify_args.seed, "RNG seed");
  verify->add_option("--constant", verify_args.constant, "schedule constant")
      ->check(CLI::PositiveNumber);
  verify->add_option("--jobs", verify_args.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--edge-cap", verify_args.edge_cap, "enumeration edge cap")
      ->check(CLI::PositiveNumber);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Exact checks on an enumerable density");
  analyze->require_subcommand(1);
  auto add_density_flags = [&](CLI::App* cmd) {
    cmd->add_option("--graph", analyze_args.graph_path, "edge-list graph file");
    cmd->add_option("--density", analyze_args.density_path, "table density JSON");
    cmd->add_option("--dpp", analyze_args.dpp_path, "DPP density JSON");
    cmd->add_flag("--dual", analyze_args.dual,
                  "with --graph: use the complement-of-tree density instead of the\n"
                  "spanning tree density");
    cmd->add_option("--seed", analyze_args.seed, "RNG seed");
    cmd->add_option("--support-cap", analyze_args.support_cap, "support enumeration cap");
  };
  auto* exchange = analyze->add_subcommand("exchange", "exact approximate-exchange constant");
  add_density_flags(exchange);
  auto* walk_exact = analyze->add_subcommand(
      "walk-exact", "stationarity, KL contraction, Pinsker on the exact kernel");
  add_density_flags(walk_exact);
  auto* hessian = analyze->add_subcommand(
      "hessian", "positive eigenvalue count of the generating-polynomial Hessian");
  add_density_flags(hessian);
  hessian->add_option("--points", analyze_args.points, "random evaluation points")
      ->check(CLI::PositiveNumber);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time sample_tree across graph sizes");
  bench->add_option("--sizes", bench_args.sizes, "edge counts, comma separated")
      ->required()
      ->delimiter(',');
  bench->add_option("--epsilon", bench_args.epsilon, "total variation target")
      ->check(CLI::Range(1e-12, 0.9999999));
  bench->add_option("--graph-family", bench_args.family, "random-regular | grid")
      ->check(CLI::IsMember({"random-regular", "grid"}));
  bench->add_option("--seed", bench_args.seed, "RNG seed");
  bench->add_option("--constant", bench_args.constant, "schedule constant")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--human", bench_args.human, "plain table instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help prints and exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) return run_sample(sample_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (analyze->parsed()) {
      if (exchange->parsed()) return run_analyze_exchange(analyze_args);
      if (walk_exact->parsed()) return run_analyze_walk_exact(analyze_args);
      return run_analyze_hessian(analyze_args);
    }
    if (bench->parsed()) return run_bench_cmd(bench_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
