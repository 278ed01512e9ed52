#include "dds/solvers.hpp"

#include "dds/bench.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <thread>
#include <utility>

namespace dds {
namespace {

bool same_point(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

struct AgentState {
  double alpha = 0.0;
  // Exact (point, f_i value) pair from a previous round; lets a baseline be
  // reused instead of re-evaluated when the point did not move.
  std::optional<std::pair<Vector, double>> known_f;
  std::deque<std::pair<Vector, double>> window;  // ZoDgdLm history
  std::optional<PollSet> poll_set;
};

struct RoundResult {
  Vector new_x;
  AgentIterationRecord rec;
  std::optional<std::pair<Vector, double>> known_f;
  bool failed = false;
  std::string error;
};

void validate_config(const DecentralizedProblem& p, const MixingMatrix& w,
                     const SolverConfig& c) {
  if (p.agents() != w.size())
    throw std::invalid_argument("problem and network disagree on agent count");
  if (c.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (c.alpha0 && !(*c.alpha0 > 0.0))
    throw std::invalid_argument("alpha0 must be positive");
  if (c.max_iterations < 0 || c.max_total_evals < 0)
    throw std::invalid_argument("budgets must be nonnegative");
  if (c.initial_iterates &&
      (c.initial_iterates->rows() != p.agents() ||
       c.initial_iterates->cols() != p.dim()))
    throw std::invalid_argument("initial iterates must be agents x dim");

  const bool is_dds = c.algorithm == Algorithm::DdsLyapunov ||
                      c.algorithm == Algorithm::DdsObjective;
  const bool is_zo = !is_dds;
  if (is_zo && !std::holds_alternative<VanishingSchedule>(c.schedule))
    throw std::invalid_argument(
        std::string(algorithm_name(c.algorithm)) +
        " requires the shared vanishing schedule");
  // Reject parameters that were moved off their defaults but are not
  // consumed by the chosen algorithm.
  if (c.algorithm != Algorithm::DdsLyapunov && c.gamma != 1.0)
    throw std::invalid_argument("gamma is only consumed by dds-lyapunov");
  if (c.algorithm == Algorithm::DdsLyapunov && !(c.gamma > 0.0))
    throw std::invalid_argument("gamma must be positive");
  if (is_dds && c.fd_step != 1e-7)
    throw std::invalid_argument(
        "fd_step is only consumed by the zeroth-order variants");
  if (is_zo && !(c.fd_step > 0.0))
    throw std::invalid_argument("fd_step must be positive");
  if (is_zo && c.poll_factory)
    throw std::invalid_argument(
        "poll sets are only consumed by the direct-search variants");
  if (is_zo && (c.forcing.c != ForcingFunction{}.c ||
                c.forcing.tau != ForcingFunction{}.tau))
    throw std::invalid_argument(
        "the forcing function is only consumed by the direct-search variants");
}

// Runs fn(i) for every agent, split contiguously over `threads` workers.
// fn must only touch state owned by agent i.
template <typename Fn>
void parallel_agents(int m, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, m));
  if (threads == 1) {
    for (int i = 0; i < m; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  const int chunk = (m + threads - 1) / threads;
  auto work = [&fn](int lo, int hi) {
    for (int i = lo; i < hi; ++i) fn(i);
  };
  for (int t = 1; t < threads; ++t)
    pool.emplace_back(work, std::min(t * chunk, m),
                      std::min((t + 1) * chunk, m));
  work(0, std::min(chunk, m));
  for (auto& th : pool) th.join();
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::DdsLyapunov: return "dds-lyapunov";
    case Algorithm::DdsObjective: return "dds-objective";
    case Algorithm::ZoDgdFd: return "zo-dgd-fd";
    case Algorithm::ZoDgdLm: return "zo-dgd-lm";
  }
  return "unknown";
}

Vector fd_gradient(const std::function<double(const Vector&)>& f,
                   const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  const int n = static_cast<int>(x.size());
  Vector g(n);
  Vector probe = x;
  for (int l = 0; l < n; ++l) {
    probe(l) = x(l) + h;
    double up = f(probe);
    probe(l) = x(l) - h;
    double down = f(probe);
    probe(l) = x(l);
    g(l) = (up - down) / (2.0 * h);
  }
  return g;
}

AffineFit fit_affine_window(const std::vector<std::pair<Vector, double>>& window,
                            int n, double ridge, double cond_limit) {
  AffineFit out;
  const int q = static_cast<int>(window.size());
  if (q < n + 1) return out;
  Vector mean = Vector::Zero(n);
  double vmean = 0.0;
  for (const auto& [pt, v] : window) {
    mean += pt;
    vmean += v;
  }
  mean /= q;
  vmean /= q;
  Matrix a(q, n);
  Vector r(q);
  for (int j = 0; j < q; ++j) {
    a.row(j) = (window[j].first - mean).transpose();
    r(j) = window[j].second - vmean;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  out.cond = (smax > 0.0 && smin > 0.0)
                 ? smax / smin
                 : std::numeric_limits<double>::infinity();
  if (!(out.cond <= cond_limit)) return out;
  Matrix normal = a.transpose() * a;
  normal.diagonal().array() += ridge;
  out.slope = normal.ldlt().solve(a.transpose() * r);
  out.ok = true;
  return out;
}

RunTrace run_solver(const DecentralizedProblem& p, const MixingMatrix& w,
                    const SolverConfig& config) {
  validate_config(p, w, config);
  const int m = p.agents();
  const int n = p.dim();
  const double alpha0 = config.alpha0 ? *config.alpha0 : p.x0().norm() + 1.0;
  const bool is_dds = config.algorithm == Algorithm::DdsLyapunov ||
                      config.algorithm == Algorithm::DdsObjective;
  const bool shared_alpha =
      std::holds_alternative<VanishingSchedule>(config.schedule);
  const std::size_t lm_window_cap = 2 * static_cast<std::size_t>(n) + 1;

  p.reset_counters();

  Matrix x = config.initial_iterates
                 ? *config.initial_iterates
                 : Matrix(Vector::Ones(m) * p.x0().transpose());

  std::vector<AgentState> agents(m);
  for (int i = 0; i < m; ++i) {
    agents[i].alpha = alpha0;
    if (is_dds)
      agents[i].poll_set = config.poll_factory ? config.poll_factory(i, n)
                                               : canonical_pss(n);
  }

  RunTrace trace;
  trace.solver_id = algorithm_name(config.algorithm);
  trace.theory_compliant = theory_compliant(config.schedule, config.forcing);

  auto alpha_span = [&] {
    double lo = agents[0].alpha, hi = agents[0].alpha;
    for (const auto& a : agents) {
      lo = std::min(lo, a.alpha);
      hi = std::max(hi, a.alpha);
    }
    return std::pair<double, double>(lo, hi);
  };
  auto push_row = [&](std::int64_t k, int successes) {
    MetricTriple mt = compute_metrics(p, x);
    auto [lo, hi] = alpha_span();
    trace.rows.push_back({k, mt.f_iterates, mt.f_mean, mt.consensus, lo, hi,
                          successes,
                          p.counters(EvalChannel::Solver).total()});
    if (config.record_iterates) trace.iterates.push_back(x);
  };
  push_row(0, 0);

  std::vector<RoundResult> results(m);
  for (std::int64_t k = 0;; ++k) {
    if (k >= config.max_iterations) break;
    if (p.counters(EvalChannel::Solver).total() >= config.max_total_evals)
      break;

    const Matrix snapshot = x;
    // Mixed rows from the synchronous snapshot, used by every variant that
    // communicates this round.
    Matrix mixed;
    if (config.algorithm != Algorithm::DdsLyapunov)
      mixed = w.matrix() * snapshot;
    const NeighborCopies nbrs(snapshot);

    parallel_agents(m, config.threads, [&](int i) {
      AgentState& st = agents[i];
      RoundResult& res = results[i];
      res = RoundResult{};
      res.rec.alpha = st.alpha;
      const Vector xi = snapshot.row(i).transpose();
      std::int64_t evals_before = p.counters(EvalChannel::Solver).count(i);
      std::optional<std::pair<Vector, double>> last_eval;
      auto fi = [&](const Vector& y) {
        double v = p.eval_local(i, y, EvalChannel::Solver);
        last_eval = {y, v};
        return v;
      };
      try {
        switch (config.algorithm) {
          case Algorithm::DdsLyapunov: {
            auto surrogate = [&](const Vector& y) {
              return fi(y) + local_coupling(w, i, y, nbrs, config.gamma);
            };
            double base;
            if (st.known_f && same_point(st.known_f->first, xi)) {
              base = st.known_f->second +
                     local_coupling(w, i, xi, nbrs, config.gamma);
              res.known_f = st.known_f;
            } else {
              base = surrogate(xi);
              res.known_f = last_eval;
            }
            PollOutcome out = poll(surrogate, xi, st.alpha, *st.poll_set,
                                   config.forcing, base);
            res.rec.baseline = base;
            if (out.accepted) {
              res.rec.success = true;
              res.rec.direction = out.accepted->direction_index;
              res.rec.trial_value = out.accepted->trial_value;
              res.new_x = out.accepted->trial_point;
              res.known_f = last_eval;  // f_i at the accepted trial
            } else {
              res.new_x = xi;
            }
            break;
          }
          case Algorithm::DdsObjective: {
            double base;
            if (st.known_f && same_point(st.known_f->first, xi)) {
              base = st.known_f->second;
              res.known_f = st.known_f;
            } else {
              base = fi(xi);
              res.known_f = last_eval;
            }
            PollOutcome out =
                poll(fi, xi, st.alpha, *st.poll_set, config.forcing, base);
            res.rec.baseline = base;
            const Vector mixed_i = mixed.row(i).transpose();
            if (out.accepted) {
              res.rec.success = true;
              res.rec.direction = out.accepted->direction_index;
              res.rec.trial_value = out.accepted->trial_value;
              res.new_x = mixed_i + st.alpha * out.accepted->direction;
              res.known_f = last_eval;
            } else {
              res.new_x = mixed_i;
            }
            // The stored pair survives only if the agent lands exactly on it.
            if (res.known_f && !same_point(res.known_f->first, res.new_x))
              res.known_f.reset();
            break;
          }
          case Algorithm::ZoDgdFd: {
            Vector g = fd_gradient(fi, xi, config.fd_step);
            res.new_x = mixed.row(i).transpose() - st.alpha * g;
            break;
          }
          case Algorithm::ZoDgdLm: {
            auto fi_window = [&](const Vector& y) {
              double v = fi(y);
              st.window.emplace_back(y, v);
              if (st.window.size() > lm_window_cap) st.window.pop_front();
              return v;
            };
            fi_window(xi);
            std::vector<std::pair<Vector, double>> win(st.window.begin(),
                                                       st.window.end());
            AffineFit fit = fit_affine_window(win, n, 1e-10, 1e12);
            Vector g = fit.ok ? fit.slope
                              : fd_gradient(fi_window, xi, config.fd_step);
            res.new_x = mixed.row(i).transpose() - st.alpha * g;
            break;
          }
        }
        if (res.new_x.size() == 0 || !res.new_x.allFinite()) {
          res.failed = true;
          res.error = "agent " + std::to_string(i) +
                      " produced a non-finite update";
        }
      } catch (const EvalFailure& e) {
        res.failed = true;
        res.error = e.what();
        if (e.direction >= 0)
          res.error += " (direction " + std::to_string(e.direction) + ")";
      }
      res.rec.evals = static_cast<int>(
          p.counters(EvalChannel::Solver).count(i) - evals_before);
    });

    for (int i = 0; i < m; ++i) {
      if (results[i].failed) {
        trace.completed = false;
        trace.failure = "round " + std::to_string(k) + ": " + results[i].error;
        break;
      }
    }
    if (!trace.completed) break;

    int successes = 0;
    for (int i = 0; i < m; ++i) {
      x.row(i) = results[i].new_x.transpose();
      agents[i].known_f = std::move(results[i].known_f);
      if (results[i].rec.success) ++successes;
    }

    if (shared_alpha) {
      double next = update_stepsize(config.schedule, alpha0, agents[0].alpha,
                                    false, k);
      for (auto& st : agents) st.alpha = next;
    } else {
      for (int i = 0; i < m; ++i)
        agents[i].alpha = update_stepsize(config.schedule, alpha0,
                                          agents[i].alpha,
                                          results[i].rec.success, k);
    }

    if (config.record_agent_log) {
      std::vector<AgentIterationRecord> recs(m);
      for (int i = 0; i < m; ++i) recs[i] = results[i].rec;
      trace.agent_log.push_back(std::move(recs));
    }
    try {
      push_row(k + 1, successes);
    } catch (const EvalFailure& e) {
      trace.completed = false;
      trace.failure =
          "round " + std::to_string(k) + " monitoring: " + e.what();
      break;
    }
  }

  trace.final_iterates = x;
  trace.evals_per_agent = p.counters(EvalChannel::Solver).per_agent();
  return trace;
}

std::vector<StationarityCheck> unsuccessful_poll_report(
    const RunTrace& trace, const DecentralizedProblem& p, const MixingMatrix& w,
    double gamma, double kappa, const std::vector<double>& lipschitz,
    const ForcingFunction& rho) {
  if (trace.iterates.size() != trace.rows.size())
    throw std::invalid_argument(
        "trace must be recorded with record_iterates");
  if (trace.agent_log.size() + 1 != trace.rows.size())
    throw std::invalid_argument(
        "trace must be recorded with record_agent_log");
  if (static_cast<int>(lipschitz.size()) != p.agents())
    throw std::invalid_argument("need one Lipschitz constant per agent");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");

  std::vector<StationarityCheck> checks;
  for (std::size_t k = 0; k < trace.agent_log.size(); ++k) {
    const Matrix& snapshot = trace.iterates[k];
    const NeighborCopies nbrs(snapshot);
    for (int i = 0; i < p.agents(); ++i) {
      const AgentIterationRecord& rec = trace.agent_log[k][i];
      if (rec.success) continue;
      const Vector xi = snapshot.row(i).transpose();
      Vector g = local_surrogate_gradient(w, i, xi, nbrs, gamma,
                                          p.grad_local(i, xi));
      const double mi = lipschitz[i] + (1.0 - w.self_weight(i)) / gamma;
      const double alpha = rec.alpha;
      const double bound = (mi / 2.0 * alpha + rho(alpha) / alpha) / kappa;
      StationarityCheck c;
      c.agent = i;
      c.k = static_cast<std::int64_t>(k);
      c.grad_norm = g.norm();
      c.bound = bound;
      c.slack = bound - c.grad_norm;
      checks.push_back(c);
    }
  }
  return checks;
}

std::vector<StationarityCheck> stationarity_bound_violations(
    const RunTrace& trace, const DecentralizedProblem& p, const MixingMatrix& w,
    double gamma, double kappa, const std::vector<double>& lipschitz,
    const ForcingFunction& rho, double tol) {
  std::vector<StationarityCheck> bad;
  for (const auto& c : unsuccessful_poll_report(trace, p, w, gamma, kappa,
                                                lipschitz, rho))
    if (c.slack < -tol * std::max(1.0, c.bound)) bad.push_back(c);
  return bad;
}

}  // namespace dds
