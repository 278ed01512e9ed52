#pragma once

#include "dds/types.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace dds {

// Per-agent evaluation tallies.  Within a round each agent is touched by a
// single worker thread, but totals must be exact under any interleaving, so
// the slots are relaxed atomics.
class EvalCounters {
 public:
  explicit EvalCounters(int m);
  EvalCounters(const EvalCounters& other);
  EvalCounters& operator=(const EvalCounters& other);

  void add(int i) { slots_[i].fetch_add(1, std::memory_order_relaxed); }
  std::int64_t count(int i) const {
    return slots_[i].load(std::memory_order_relaxed);
  }
  std::int64_t total() const;
  std::vector<std::int64_t> per_agent() const;
  int size() const { return m_; }
  void reset();

 private:
  int m_;
  std::unique_ptr<std::atomic<std::int64_t>[]> slots_;
};

using LocalObjective = std::function<double(int, const Vector&)>;
using LocalGradient = std::function<Vector(int, const Vector&)>;

// A sum objective F = sum_i f_i over m agents sharing decision dimension n.
// Each agent owns one term and evaluates it only through eval_local, which
// charges the chosen accounting channel.
class DecentralizedProblem {
 public:
  DecentralizedProblem(std::string name, int n, int m, LocalObjective f,
                       LocalGradient grad, Vector x0);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  int agents() const { return m_; }
  const Vector& x0() const { return x0_; }

  // f_i(x).  Throws std::invalid_argument on non-finite input (rejected
  // before the term runs, so nothing is charged) and EvalFailure when the
  // value itself is non-finite (the oracle was consulted, so the
  // evaluation is charged first).
  double eval_local(int i, const Vector& x,
                    EvalChannel channel = EvalChannel::Solver) const;

  // Analytic gradient of f_i; never charged to a counter.
  Vector grad_local(int i, const Vector& x) const;
  bool has_gradient() const { return static_cast<bool>(grad_); }

  const EvalCounters& counters(EvalChannel channel) const {
    return channel == EvalChannel::Solver ? solver_evals_ : monitor_evals_;
  }
  void reset_counters() const;

 private:
  std::string name_;
  int n_;
  int m_;
  LocalObjective f_;
  LocalGradient grad_;
  Vector x0_;
  mutable EvalCounters solver_evals_;
  mutable EvalCounters monitor_evals_;
};

// Numerically stable 1/(1 + exp(-t)).
double logistic(double t);

// Separable m = n instance: f_i(x) = a_i * logistic(x_i) + b_i * log(1 + x_i^2),
// started at the all-ones point.
DecentralizedProblem toy_problem(int n, const Vector& a, const Vector& b);

// Coefficients a_i, b_i drawn i.i.d. standard normal from `seed`.
DecentralizedProblem toy_problem(int n, std::uint64_t seed);

// Nonlinear least-squares test function F: R^n -> R^m with analytic
// Jacobian and its customary starting point.  Decentralizes by assigning
// agent i the squared residual f_i = F_i(x)^2.
struct VectorResidualProblem {
  std::string name;
  int n = 0;
  int m = 0;
  std::function<Vector(const Vector&)> residual;
  std::function<Matrix(const Vector&)> jacobian;  // m x n
  Vector x0;

  DecentralizedProblem decentralized() const;
};

// Registered suite, fixed order.  Every instance satisfies
// 2 <= n <= 30 and 2 <= m <= 65.
const std::vector<VectorResidualProblem>& residual_suite();

// Null when unknown; error messages should list residual_suite() names.
const VectorResidualProblem* find_residual(const std::string& name);

}  // namespace dds
