// Command-line front end: explore | spanner | verify | gen.
//
// Exit codes: 0 all enforced checks passed, 1 an enforced check failed,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spanex/errors.hpp"
#include "spanex/experiment.hpp"
#include "spanex/instances.hpp"

namespace {

using namespace spanex;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  unsigned jobs = 0;
  bool strict = false;
  bool include_logs = false;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ArgumentError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

// Inline JSON, a JSON file holding a spec, or an edge-list file.
InstanceSpec instance_from_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    try {
      return parse_instance_spec(nlohmann::json::parse(arg));
    } catch (const nlohmann::json::parse_error& ex) {
      throw ArgumentError(std::string("--instance is not valid JSON: ") + ex.what());
    }
  }
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return parse_instance_spec(read_json_file(arg));
  return InstanceSpec{Family::File, {{"path", arg}}, 0};
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw ArgumentError("--format must be csv or json");
}

ExperimentConfig base_config(const CommonOptions& opt) {
  if (opt.config_path.empty() == opt.instance.empty())
    throw ArgumentError("give exactly one of --config or --instance");
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = parse_experiment_config(read_json_file(opt.config_path));
  } else {
    cfg.instances.push_back(instance_from_argument(opt.instance));
  }
  if (opt.seed)
    for (auto& spec : cfg.instances) spec.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output_path = opt.out;
  if (!opt.format.empty()) cfg.format = parse_format(opt.format);
  if (opt.jobs > 0) cfg.parallelism = opt.jobs;
  if (opt.strict) cfg.enforced.insert(all_check_names().begin(), all_check_names().end());
  if (opt.include_logs) cfg.include_logs = true;
  return cfg;
}

int finish(const Report& report, OutputFormat format, const std::string& path) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  write_report(report, format, path);
  auto failures = report.enforced_failures();
  for (const auto& f : failures) std::cerr << "violation: " << f << "\n";
  return failures.empty() ? kExitOk : kExitViolation;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "Experiment config (JSON)");
  cmd->add_option("--instance", opt.instance, "Instance spec as JSON, a .json spec file, or an edge-list file");
  cmd->add_option("--seed", opt.seed, "Override the instance seed");
  cmd->add_option("--out", opt.out, "Report path (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--strict", opt.strict, "Enforce all checks, including the published bounds");
  cmd->add_flag("--log", opt.include_logs, "Attach full traversal logs / spanner edge lists (JSON output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online exploration and greedy spanner experiments"};
  app.require_subcommand(1);

  CommonOptions explore_opt;
  std::string delta_text;
  std::string algorithm = "blocking";
  auto* explore = app.add_subcommand("explore", "Run Blocking / nearest neighbor and verify each run");
  add_common(explore, explore_opt);
  explore->add_option("--delta", delta_text, "Blocking parameter: p/q or log2n (default 1)");
  explore->add_option("--algorithm", algorithm, "blocking, nearest_neighbor or both")
      ->check(CLI::IsMember({"blocking", "nearest_neighbor", "both"}));

  CommonOptions spanner_opt;
  std::vector<std::string> epsilon_texts;
  auto* spanner = app.add_subcommand("spanner", "Build greedy spanners and verify them");
  add_common(spanner, spanner_opt);
  spanner->add_option("--epsilon", epsilon_texts, "Stretch parameter(s) p/q (default 1)")->delimiter(',');

  std::uint64_t verify_seed = 1;
  std::size_t verify_seeds = 5;
  std::size_t tsp_graphs = 50;
  std::string verify_out, verify_format = "csv";
  unsigned verify_jobs = 1;
  auto* verify = app.add_subcommand("verify", "Run the seeded property campaign");
  verify->add_option("--seed", verify_seed, "First seed of the seed matrix");
  verify->add_option("--seeds", verify_seeds, "Number of seeds")->check(CLI::PositiveNumber);
  verify->add_option("--tsp-graphs", tsp_graphs, "Graphs in the exact-TSP agreement suite");
  verify->add_option("--out", verify_out, "Report path (default: stdout)");
  verify->add_option("--format", verify_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--strict", "Accepted for symmetry; every campaign property is enforced");

  std::string gen_instance, gen_out;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "Write a generated instance as an edge list");
  gen->add_option("--instance", gen_instance, "Instance spec as JSON or a .json spec file")->required();
  gen->add_option("--seed", gen_seed, "Override the instance seed");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (explore->parsed()) {
      ExperimentConfig cfg = base_config(explore_opt);
      const bool config_algorithms = !cfg.algorithms.empty();
      if (!config_algorithms || !delta_text.empty() || algorithm != "blocking") {
        cfg.algorithms.clear();
        if (algorithm != "nearest_neighbor")
          cfg.algorithms.push_back({AlgorithmKind::Blocking, DeltaExpr::parse(delta_text.empty() ? "1" : delta_text)});
        if (algorithm != "blocking") cfg.algorithms.push_back({AlgorithmKind::NearestNeighbor, {}});
      }
      return finish(run_explore(cfg), cfg.format, cfg.output_path);
    }
    if (spanner->parsed()) {
      ExperimentConfig cfg = base_config(spanner_opt);
      if (!epsilon_texts.empty() || cfg.epsilons.empty()) {
        cfg.epsilons.clear();
        if (epsilon_texts.empty()) epsilon_texts.push_back("1");
        for (const auto& t : epsilon_texts) {
          Rational e = Rational::parse(t);
          if (e.is_infinite() || e.sign() <= 0) throw ArgumentError("--epsilon must be positive");
          cfg.epsilons.push_back(e);
        }
      }
      return finish(run_spanner(cfg), cfg.format, cfg.output_path);
    }
    if (verify->parsed()) {
      CampaignOptions opt;
      opt.seeds.clear();
      for (std::size_t i = 0; i < verify_seeds; ++i) opt.seeds.push_back(verify_seed + i);
      opt.tsp_graphs = tsp_graphs;
      opt.parallelism = verify_jobs;
      return finish(run_verify(opt), parse_format(verify_format), verify_out);
    }
    if (gen->parsed()) {
      InstanceSpec spec = instance_from_argument(gen_instance);
      if (gen_seed) spec.seed = *gen_seed;
      Instance inst = build_instance(spec);
      for (const auto& w : inst.warnings) std::cerr << "warning: " << w << "\n";
      if (gen_out.empty() || gen_out == "-")
        std::cout << format_graph(inst.graph);
      else
        write_graph(gen_out, inst.graph);
      return kExitOk;
    }
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "error: bad JSON value: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
