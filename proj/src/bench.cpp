#include "dds/bench.hpp"

#include "dds/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Keyed lookup preserving first-appearance order.
struct OrderedIndex {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  int intern(const std::string& s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(names.size()));
    if (fresh) names.push_back(s);
    return it->second;
  }
};

std::vector<ProfileCurve> step_curves(
    const OrderedIndex& solvers,
    const std::vector<std::vector<double>>& scores,  // [solver][problem], inf = excluded
    int problems, double grid_floor) {
  std::set<double> breaks{grid_floor};
  for (const auto& row : scores)
    for (double v : row)
      if (std::isfinite(v)) breaks.insert(v);
  std::vector<double> grid(breaks.begin(), breaks.end());

  std::vector<ProfileCurve> curves;
  for (std::size_t s = 0; s < solvers.names.size(); ++s) {
    ProfileCurve c;
    c.solver = solvers.names[s];
    c.x = grid;
    c.y.reserve(grid.size());
    for (double g : grid) {
      int hits = 0;
      for (double v : scores[s])
        if (v <= g) ++hits;
      c.y.push_back(static_cast<double>(hits) / problems);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

// Shared cell collection for both profile kinds.
struct CellTable {
  OrderedIndex problems;
  OrderedIndex solvers;
  // scores[solver][problem]: t for performance prep, inf when unsolved
  std::vector<std::vector<std::optional<std::int64_t>>> t;
  std::vector<int> dim;  // per problem
};

CellTable collect(const std::vector<ProfileEntry>& entries) {
  if (entries.empty())
    throw std::invalid_argument("profile over an empty problem set");
  CellTable tab;
  for (const auto& e : entries) {
    tab.problems.intern(e.problem);
    tab.solvers.intern(e.solver);
  }
  const int np = static_cast<int>(tab.problems.names.size());
  const int ns = static_cast<int>(tab.solvers.names.size());
  tab.t.assign(ns, std::vector<std::optional<std::int64_t>>(np));
  tab.dim.assign(np, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : entries) {
    const int p = tab.problems.index.at(e.problem);
    const int s = tab.solvers.index.at(e.solver);
    if (!seen.insert({s, p}).second)
      throw std::invalid_argument("duplicate profile cell: " + e.problem +
                                  " / " + e.solver);
    if (e.t && *e.t < 0)
      throw std::invalid_argument("negative evaluation count");
    if (e.dim <= 0) throw std::invalid_argument("dimension must be positive");
    if (tab.dim[p] != 0 && tab.dim[p] != e.dim)
      throw std::invalid_argument("inconsistent dimension for " + e.problem);
    tab.dim[p] = e.dim;
    tab.t[s][p] = e.t;
  }
  return tab;
}

}  // namespace

MetricTriple compute_metrics(const DecentralizedProblem& p, const Matrix& x) {
  if (x.rows() != p.agents() || x.cols() != p.dim())
    throw std::invalid_argument("iterate must be agents x dim");
  const Vector mean = x.colwise().mean().transpose();
  MetricTriple t;
  for (int i = 0; i < p.agents(); ++i) {
    const Vector xi = x.row(i).transpose();
    t.f_iterates += p.eval_local(i, xi, EvalChannel::Monitor);
    t.f_mean += p.eval_local(i, mean, EvalChannel::Monitor);
    t.consensus += (xi - mean).norm();
  }
  return t;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::FIterates: return "f_iterates";
    case Metric::FMean: return "f_mean";
    case Metric::Consensus: return "consensus";
  }
  return "unknown";
}

double metric_value(const TraceRow& row, Metric m) {
  switch (m) {
    case Metric::FIterates: return row.f_iterates;
    case Metric::FMean: return row.f_mean;
    case Metric::Consensus: return row.consensus;
  }
  return 0.0;
}

std::optional<std::int64_t> convergence_index(const RunTrace& trace, Metric m,
                                              double tol,
                                              const ConvergenceAnchors& a) {
  if (!(tol > 0.0 && tol <= 1.0))
    throw std::invalid_argument("tolerance must lie in (0, 1]");
  if (a.opt_low > a.opt_start)
    throw std::invalid_argument(
        "degenerate instance: best value exceeds the starting value");
  const double threshold = a.opt_low + tol * (a.opt_start - a.opt_low);
  for (const auto& row : trace.rows)
    if (metric_value(row, m) <= threshold) return row.cum_evals;
  return std::nullopt;
}

std::vector<ProfileCurve> performance_profile(
    const std::vector<ProfileEntry>& entries) {
  CellTable tab = collect(entries);
  const int np = static_cast<int>(tab.problems.names.size());
  const int ns = static_cast<int>(tab.solvers.names.size());

  // Per-problem best over solved cells.
  std::vector<std::optional<std::int64_t>> tmin(np);
  for (int p = 0; p < np; ++p)
    for (int s = 0; s < ns; ++s)
      if (tab.t[s][p] && (!tmin[p] || *tab.t[s][p] < *tmin[p]))
        tmin[p] = tab.t[s][p];

  std::vector<std::vector<double>> ratio(ns, std::vector<double>(np, kInf));
  for (int s = 0; s < ns; ++s)
    for (int p = 0; p < np; ++p) {
      if (!tab.t[s][p]) continue;
      const std::int64_t t = *tab.t[s][p];
      if (t == *tmin[p])
        ratio[s][p] = 1.0;  // also covers a zero-evaluation minimum
      else if (*tmin[p] == 0)
        ratio[s][p] = kInf;
      else
        ratio[s][p] = static_cast<double>(t) / static_cast<double>(*tmin[p]);
    }
  return step_curves(tab.solvers, ratio, np, 1.0);
}

std::vector<ProfileCurve> data_profile(
    const std::vector<ProfileEntry>& entries) {
  CellTable tab = collect(entries);
  const int np = static_cast<int>(tab.problems.names.size());
  const int ns = static_cast<int>(tab.solvers.names.size());
  std::vector<std::vector<double>> groups(ns, std::vector<double>(np, kInf));
  for (int s = 0; s < ns; ++s)
    for (int p = 0; p < np; ++p)
      if (tab.t[s][p])
        groups[s][p] =
            static_cast<double>(*tab.t[s][p]) / (tab.dim[p] + 1);
  return step_curves(tab.solvers, groups, np, 0.0);
}

void write_profile_csv(std::ostream& out, const std::string& axis,
                       const std::vector<ProfileCurve>& curves) {
  out << axis;
  for (const auto& c : curves) out << ',' << c.solver;
  out << '\n';
  if (curves.empty()) return;
  const std::size_t rows = curves.front().x.size();
  for (const auto& c : curves)
    if (c.x != curves.front().x || c.y.size() != rows)
      throw std::invalid_argument("curves must share one grid");
  for (std::size_t r = 0; r < rows; ++r) {
    out << format_g17(curves.front().x[r]);
    for (const auto& c : curves) out << ',' << format_g17(c.y[r]);
    out << '\n';
  }
}

ConvergenceAnchors profile_anchors(const std::vector<BenchCell>& problem_cells,
                                   Metric m, const RunTrace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("empty trace");
  ConvergenceAnchors a;
  a.opt_low = kInf;
  for (const auto& cell : problem_cells) {
    if (!cell.trace) throw std::invalid_argument("cell without a trace");
    for (const auto& row : cell.trace->rows)
      a.opt_low = std::min(a.opt_low, metric_value(row, m));
  }
  if (m == Metric::Consensus) {
    // Replicated starts put the consensus metric at its floor in row 0, so
    // the threshold is anchored at the largest value the trace visits.
    a.opt_start = 0.0;
    for (const auto& row : trace.rows)
      a.opt_start = std::max(a.opt_start, row.consensus);
  } else {
    a.opt_start = metric_value(trace.rows.front(), m);
  }
  return a;
}

std::string format_tol(double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", tol);
  return buf;
}

std::vector<std::string> emit_profiles(const std::vector<BenchCell>& cells,
                                       const std::vector<double>& tols,
                                       const std::string& out_dir) {
  if (cells.empty()) throw std::invalid_argument("no cells to profile");
  std::map<std::string, std::vector<BenchCell>> by_problem;
  for (const auto& c : cells) {
    if (!c.trace) throw std::invalid_argument("cell without a trace");
    by_problem[c.problem].push_back(c);
  }

  std::vector<std::string> written;
  std::ostringstream long_rows;
  struct Kind {
    const char* name;
    std::vector<ProfileCurve> (*build)(const std::vector<ProfileEntry>&);
    const char* axis;
  };
  const Kind kinds[] = {{"perf", &performance_profile, "gamma"},
                        {"data", &data_profile, "kappa"}};

  for (const Kind& kind : kinds) {
    for (Metric m : kAllMetrics) {
      for (double tol : tols) {
        std::vector<ProfileEntry> entries;
        for (const auto& c : cells) {
          ProfileEntry e;
          e.problem = c.problem;
          e.solver = c.solver;
          e.dim = c.dim;
          if (c.trace->completed) {
            ConvergenceAnchors a =
                profile_anchors(by_problem.at(c.problem), m, *c.trace);
            e.t = convergence_index(*c.trace, m, tol, a);
          }
          entries.push_back(std::move(e));
        }
        auto curves = kind.build(entries);
        const std::string name = std::string(kind.name) + "_" +
                                 metric_name(m) + "_" + format_tol(tol) +
                                 ".csv";
        const std::string path = out_dir + "/" + name;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        write_profile_csv(out, kind.axis, curves);
        if (!out) throw std::runtime_error("write failed: " + path);
        written.push_back(name);
        for (const auto& c : curves)
          for (std::size_t r = 0; r < c.x.size(); ++r)
            long_rows << kind.name << ',' << metric_name(m) << ','
                      << format_tol(tol) << ',' << c.solver << ','
                      << format_g17(c.x[r]) << ',' << format_g17(c.y[r])
                      << '\n';
      }
    }
  }

  const std::string long_path = out_dir + "/profiles_long.csv";
  std::ofstream out(long_path);
  if (!out) throw std::runtime_error("cannot open " + long_path);
  out << "kind,metric,tol,solver,x,y\n" << long_rows.str();
  if (!out) throw std::runtime_error("write failed: " + long_path);
  written.push_back("profiles_long.csv");
  return written;
}

}  // namespace dds
