#pragma once

#include "dds/bench.hpp"
#include "dds/network.hpp"
#include "dds/problems.hpp"
#include "dds/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dds {

// Canonical solver variant identifiers, in reporting order.
const std::vector<std::string>& solver_ids();

// Maps a solver id to algorithm + schedule; throws std::invalid_argument
// listing the valid ids on an unknown one.
SolverConfig solver_config_for(const std::string& solver_id);

// Batch and run description, fillable from an INI-style key/value file
// (see parse_config_file) and from command-line overrides.
struct ExperimentConfig {
  // [run]
  std::string problem;  // "toy<n>" or a residual_suite() name
  std::string solver;   // entry of solver_ids()
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;  // batch seeds; {seed} when empty
  double gamma = 1.0;
  double edge_prob = 0.5;
  std::optional<std::int64_t> budget_evals;  // override, total local evals
  std::optional<std::int64_t> budget_iters;
  std::optional<double> alpha0;
  int threads = 1;
  std::string out_dir = "out";
  bool export_mixing = false;
  bool strict = false;

  // [toy]
  std::vector<int> toy_dims = {5, 10, 15};
  std::vector<double> gammas = {1.0, 10.0, 100.0};

  // [profiles]
  std::vector<double> tols = {1e-3, 1e-6};
};

// Parses the documented plain-text format: `[section]` headers and
// `key = value` lines, `#` comments.  Unknown keys are an error.
ExperimentConfig parse_config_file(const std::string& path);
void write_config_file(const std::string& path, const ExperimentConfig& c);

// Looks the problem id up: "toy<n>" instantiates the separable toy family
// (coefficients seeded per (n, seed)), anything else must name a suite
// entry.  The same (problem, seed) always yields the same instance and the
// same communication graph.
DecentralizedProblem make_problem(const std::string& id, std::uint64_t seed);
MixingMatrix make_graph_for(const std::string& problem_id, int m,
                            double edge_prob, std::uint64_t seed);

// Default budgets: toy instances get 100 n evaluations per agent; suite
// instances 400 n per agent capped at 500 rounds.
std::int64_t default_budget_evals(const std::string& problem_id, int n, int m);
std::int64_t default_budget_iters(const std::string& problem_id);

// Verbs behind the CLI.  Each returns a process exit code and writes
// human-readable progress to `log`.
int run_single(const ExperimentConfig& c, std::ostream& log);
int run_toy_sweep(const ExperimentConfig& c, std::ostream& log);
int run_suite(const ExperimentConfig& c, std::ostream& log);
// Rebuilds profile CSVs from the traces and manifest of a previous
// run_suite output directory.
int recompute_profiles(const ExperimentConfig& c, std::ostream& log);
void list_problems(std::ostream& out, bool as_csv);

}  // namespace dds
