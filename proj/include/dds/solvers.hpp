#pragma once

#include "dds/network.hpp"
#include "dds/penalty.hpp"
#include "dds/problems.hpp"
#include "dds/searchcore.hpp"
#include "dds/types.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dds {

enum class Algorithm {
  DdsLyapunov,   // polls the local surrogate, no explicit mixing step
  DdsObjective,  // polls the raw local objective, mixes every round
  ZoDgdFd,       // decentralized gradient descent, centered-difference gradient
  ZoDgdLm,       // decentralized gradient descent, linear-model gradient
};

const char* algorithm_name(Algorithm a);

struct SolverConfig {
  Algorithm algorithm = Algorithm::DdsObjective;
  StepsizeSchedule schedule = VanishingSchedule{};
  ForcingFunction forcing;   // direct-search variants only
  double gamma = 1.0;        // DdsLyapunov only: penalty weight
  double fd_step = 1e-7;     // ZoDgd* only: finite-difference step
  // Initial stepsize; defaults to ||x0|| + 1 when unset.
  std::optional<double> alpha0;

  // Budget: the run stops at the first round boundary where the cumulative
  // solver-channel evaluations reach max_total_evals or the round count
  // reaches max_iterations.  A round in flight always completes, so the
  // final tally may overshoot by at most one round.
  std::int64_t max_total_evals = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_iterations = 1000000;

  int threads = 1;

  bool record_iterates = false;
  bool record_agent_log = false;

  // Per-agent poll order; canonical_pss when unset.
  std::function<PollSet(int agent, int n)> poll_factory;

  // Testing hook: overrides the replicated-x0 initial stacked iterate.
  std::optional<Matrix> initial_iterates;
};

// What one agent did during one round.
struct AgentIterationRecord {
  double alpha = 0.0;  // stepsize used in this round
  bool success = false;
  int direction = -1;
  double baseline = std::numeric_limits<double>::quiet_NaN();
  double trial_value = std::numeric_limits<double>::quiet_NaN();
  int evals = 0;  // solver-channel evaluations this agent spent this round
};

struct TraceRow {
  std::int64_t k = 0;
  double f_iterates = 0.0;  // sum_i f_i(x_i)
  double f_mean = 0.0;      // sum_i f_i(mean iterate)
  double consensus = 0.0;   // sum_i ||x_i - mean||
  double alpha_min = 0.0;   // over agents, stepsize entering round k
  double alpha_max = 0.0;
  int successes = 0;  // in the round that produced this state; 0 in row 0
  std::int64_t cum_evals = 0;  // solver channel, all agents
};

struct RunTrace {
  std::string solver_id;
  std::vector<TraceRow> rows;  // rows[0] is the initial state
  Matrix final_iterates;       // one agent per row

  // Populated when the corresponding record_* flag was set.
  std::vector<Matrix> iterates;  // snapshot per row, aligned with rows
  std::vector<std::vector<AgentIterationRecord>> agent_log;  // per round

  std::vector<std::int64_t> evals_per_agent;
  bool completed = true;
  std::string failure;  // reason when !completed
  bool theory_compliant = true;

  std::int64_t iterations() const {
    return static_cast<std::int64_t>(rows.size()) - 1;
  }
  std::int64_t total_evals() const {
    return rows.empty() ? 0 : rows.back().cum_evals;
  }
};

// Runs config.algorithm on the problem over the given mixing matrix.
// Identical (problem, w, config) inputs produce identical traces,
// independent of config.threads.
RunTrace run_solver(const DecentralizedProblem& p, const MixingMatrix& w,
                    const SolverConfig& config);

// Centered finite-difference gradient estimate, 2n evaluations of f.
Vector fd_gradient(const std::function<double(const Vector&)>& f,
                   const Vector& x, double h);

// Affine model fit through a window of (point, value) pairs by
// ridge-regularized least squares on mean-shifted data.
struct AffineFit {
  Vector slope;
  double cond = std::numeric_limits<double>::infinity();
  bool ok = false;  // false: too few points or condition number too large
};

AffineFit fit_affine_window(const std::vector<std::pair<Vector, double>>& window,
                            int n, double ridge, double cond_limit);

// One unsuccessful-round stationarity check: on any round an agent polls a
// full positive spanning set without success, the surrogate gradient obeys
//   ||grad L_i|| <= (1/kappa) (M_i/2 * alpha + rho(alpha)/alpha),
// with M_i = lipschitz_i + (1 - w_ii)/gamma.  slack = bound - grad_norm.
struct StationarityCheck {
  int agent = 0;
  std::int64_t k = 0;
  double grad_norm = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

// Evaluates both sides for every unsuccessful (agent, round) pair of a
// DdsLyapunov trace recorded with iterates and agent log.  `lipschitz`
// holds per-agent gradient Lipschitz constants of f_i.
std::vector<StationarityCheck> unsuccessful_poll_report(
    const RunTrace& trace, const DecentralizedProblem& p, const MixingMatrix& w,
    double gamma, double kappa, const std::vector<double>& lipschitz,
    const ForcingFunction& rho);

// The checks violating the bound beyond tolerance; empty for a correct
// implementation.
std::vector<StationarityCheck> stationarity_bound_violations(
    const RunTrace& trace, const DecentralizedProblem& p, const MixingMatrix& w,
    double gamma, double kappa, const std::vector<double>& lipschitz,
    const ForcingFunction& rho, double tol = 1e-9);

}  // namespace dds
