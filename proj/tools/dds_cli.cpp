#include "dds/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

// --config is applied before the remaining flags so explicit flags win.
std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return "";
}

void add_run_options(CLI::App* cmd, dds::ExperimentConfig& c,
                     std::string& config_sink) {
  cmd->add_option("--config", config_sink,
                  "configuration file applied before other flags")
      ->type_name("FILE");
  cmd->add_option("--seed", c.seed, "base RNG seed");
  cmd->add_option("--seeds", c.seeds, "comma-separated batch seeds")
      ->delimiter(',');
  cmd->add_option("--gamma", c.gamma, "penalty weight (dds-lyapunov)");
  cmd->add_option("--edge-prob", c.edge_prob,
                  "edge probability of the communication graph");
  cmd->add_option("--budget-evals", c.budget_evals,
                  "total local evaluation budget override");
  cmd->add_option("--budget-iters", c.budget_iters, "round cap override");
  cmd->add_option("--alpha0", c.alpha0, "initial stepsize override");
  cmd->add_option("--threads", c.threads, "worker threads per run");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_flag("--export-mixing", c.export_mixing,
                "also write the mixing matrix per (problem, seed)");
  cmd->add_flag("--strict", c.strict,
                "exit nonzero when any run ends incomplete");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized direct-search optimization toolkit"};
  app.require_subcommand(1);

  dds::ExperimentConfig c;
  const std::string config_path = find_config_arg(argc, argv);
  if (!config_path.empty()) {
    try {
      c = dds::parse_config_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::string config_sink;
  bool csv = false;
  CLI::App* list = app.add_subcommand("list-problems", "print the problem registry");
  list->add_flag("--csv", csv, "machine-readable output");

  CLI::App* run = app.add_subcommand("run", "run one (problem, solver, seed) cell");
  run->add_option("--problem", c.problem, "problem id (toy<n> or suite name)");
  run->add_option("--solver", c.solver, "solver id");
  add_run_options(run, c, config_sink);

  CLI::App* toy = app.add_subcommand("toy-sweep",
                                     "all solvers on the toy family across gammas");
  toy->add_option("--dims", c.toy_dims, "toy dimensions")->delimiter(',');
  toy->add_option("--gammas", c.gammas, "penalty weights for dds-lyapunov")
      ->delimiter(',');
  add_run_options(toy, c, config_sink);

  CLI::App* suite = app.add_subcommand("suite",
                                       "all solvers on the least-squares suite, with profiles");
  suite->add_option("--tols", c.tols, "convergence tolerances")->delimiter(',');
  add_run_options(suite, c, config_sink);

  CLI::App* prof = app.add_subcommand("profiles",
                                      "rebuild profile CSVs from a previous suite output");
  prof->add_option("--tols", c.tols, "convergence tolerances")->delimiter(',');
  prof->add_option("--out", c.out_dir, "directory holding manifest.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list->parsed()) {
    dds::list_problems(std::cout, csv);
    return 0;
  }
  if (run->parsed()) return dds::run_single(c, std::cout);
  if (toy->parsed()) return dds::run_toy_sweep(c, std::cout);
  if (suite->parsed()) return dds::run_suite(c, std::cout);
  if (prof->parsed()) return dds::recompute_profiles(c, std::cout);
  return 0;
}
