#pragma once

#include "dds/problems.hpp"
#include "dds/solvers.hpp"
#include "dds/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dds {

struct MetricTriple {
  double f_iterates = 0.0;
  double f_mean = 0.0;
  double consensus = 0.0;
};

// Evaluates the monitoring triple at a stacked iterate; the 2m objective
// evaluations go to the monitoring channel.
MetricTriple compute_metrics(const DecentralizedProblem& p, const Matrix& x);

enum class Metric { FIterates, FMean, Consensus };

inline constexpr Metric kAllMetrics[] = {Metric::FIterates, Metric::FMean,
                                         Metric::Consensus};

const char* metric_name(Metric m);  // "f_iterates", "f_mean", "consensus"
double metric_value(const TraceRow& row, Metric m);

// Thresholding anchors for the convergence test.  opt_start is the metric
// at the starting point; for the consensus metric, which starts at exactly
// 0 under replicated initialization, it is anchored at the maximum value
// the trace visits.  opt_low is the best value any solver reached on the
// same problem.
struct ConvergenceAnchors {
  double opt_start = 0.0;
  double opt_low = 0.0;
};

// Smallest cumulative evaluation count at which
//   metric <= opt_low + tol * (opt_start - opt_low)
// holds; empty when the trace never satisfies it.  opt_low > opt_start is
// rejected as a degenerate instance.
std::optional<std::int64_t> convergence_index(const RunTrace& trace, Metric m,
                                              double tol,
                                              const ConvergenceAnchors& a);

// One (problem, solver) cell of a profile computation.
struct ProfileEntry {
  std::string problem;
  std::string solver;
  int dim = 0;                    // decision dimension n_p
  std::optional<std::int64_t> t;  // evaluations to convergence; empty: unsolved
};

struct ProfileCurve {
  std::string solver;
  std::vector<double> x;  // ratio gamma (performance) or kappa (data)
  std::vector<double> y;  // fraction of problems, nondecreasing, in [0, 1]
};

// Performance profile: fraction of problems with t within a factor of the
// per-problem best.  Cells where no solver converged count in the
// denominator and in no curve.  Both profiles share the solver order of
// first appearance in `entries` and evaluate every curve on the common
// breakpoint grid.
std::vector<ProfileCurve> performance_profile(
    const std::vector<ProfileEntry>& entries);

// Data profile: fraction of problems solved within kappa groups of
// (n_p + 1) evaluations.
std::vector<ProfileCurve> data_profile(const std::vector<ProfileEntry>& entries);

// Wide CSV: one row per grid point, first column `axis`, one column per
// solver.  Degenerate inputs yield a header-only file.
void write_profile_csv(std::ostream& out, const std::string& axis,
                       const std::vector<ProfileCurve>& curves);

// A finished run entering profile computation.
struct BenchCell {
  std::string problem;
  std::string solver;
  int dim = 0;
  const RunTrace* trace = nullptr;
};

// Emits profile CSVs for every (kind, metric, tol): files named
//   {perf|data}_{metric}_{tol}.csv   (tol rendered like 1e-03)
// plus the long-format profiles_long.csv, into out_dir.  Returns the file
// names written, in emission order.
std::vector<std::string> emit_profiles(const std::vector<BenchCell>& cells,
                                       const std::vector<double>& tols,
                                       const std::string& out_dir);

// Anchors used by emit_profiles for one problem and metric.
ConvergenceAnchors profile_anchors(const std::vector<BenchCell>& problem_cells,
                                   Metric m, const RunTrace& trace);

std::string format_tol(double tol);  // 1e-03 style

}  // namespace dds
