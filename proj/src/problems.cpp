#include "dds/problems.hpp"

#include "dds/rng.hpp"

#include <cmath>
#include <utility>

namespace dds {

EvalCounters::EvalCounters(int m)
    : m_(m), slots_(new std::atomic<std::int64_t>[m]) {
  reset();
}

EvalCounters::EvalCounters(const EvalCounters& other)
    : m_(other.m_), slots_(new std::atomic<std::int64_t>[other.m_]) {
  for (int i = 0; i < m_; ++i)
    slots_[i].store(other.count(i), std::memory_order_relaxed);
}

EvalCounters& EvalCounters::operator=(const EvalCounters& other) {
  if (this == &other) return *this;
  if (m_ != other.m_) {
    slots_.reset(new std::atomic<std::int64_t>[other.m_]);
    m_ = other.m_;
  }
  for (int i = 0; i < m_; ++i)
    slots_[i].store(other.count(i), std::memory_order_relaxed);
  return *this;
}

std::int64_t EvalCounters::total() const {
  std::int64_t t = 0;
  for (int i = 0; i < m_; ++i) t += count(i);
  return t;
}

std::vector<std::int64_t> EvalCounters::per_agent() const {
  std::vector<std::int64_t> v(m_);
  for (int i = 0; i < m_; ++i) v[i] = count(i);
  return v;
}

void EvalCounters::reset() {
  for (int i = 0; i < m_; ++i) slots_[i].store(0, std::memory_order_relaxed);
}

DecentralizedProblem::DecentralizedProblem(std::string name, int n, int m,
                                           LocalObjective f, LocalGradient grad,
                                           Vector x0)
    : name_(std::move(name)),
      n_(n),
      m_(m),
      f_(std::move(f)),
      grad_(std::move(grad)),
      x0_(std::move(x0)),
      solver_evals_(m),
      monitor_evals_(m) {
  if (n_ < 1 || m_ < 1)
    throw std::invalid_argument("problem needs n >= 1 and m >= 1");
  if (x0_.size() != n_)
    throw std::invalid_argument("starting point dimension mismatch");
  if (!f_) throw std::invalid_argument("missing local objective");
}

double DecentralizedProblem::eval_local(int i, const Vector& x,
                                        EvalChannel channel) const {
  if (i < 0 || i >= m_) throw std::invalid_argument("agent index out of range");
  if (x.size() != n_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  if (!x.allFinite())
    throw std::invalid_argument("evaluation point has non-finite entries");
  (channel == EvalChannel::Solver ? solver_evals_ : monitor_evals_).add(i);
  double v = f_(i, x);
  if (!std::isfinite(v))
    throw EvalFailure(i, -1,
                      "local objective of agent " + std::to_string(i) +
                          " returned a non-finite value");
  return v;
}

Vector DecentralizedProblem::grad_local(int i, const Vector& x) const {
  if (i < 0 || i >= m_) throw std::invalid_argument("agent index out of range");
  if (!grad_) throw std::logic_error("problem has no analytic gradient");
  return grad_(i, x);
}

void DecentralizedProblem::reset_counters() const {
  solver_evals_.reset();
  monitor_evals_.reset();
}

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

DecentralizedProblem toy_problem(int n, const Vector& a, const Vector& b) {
  if (n < 1) throw std::invalid_argument("toy problem needs n >= 1");
  if (a.size() != n || b.size() != n)
    throw std::invalid_argument("coefficient vectors must have length n");
  auto f = [a, b](int i, const Vector& x) {
    double xi = x(i);
    return a(i) * logistic(xi) + b(i) * std::log1p(xi * xi);
  };
  auto grad = [a, b, n](int i, const Vector& x) {
    double xi = x(i);
    double s = logistic(xi);
    Vector g = Vector::Zero(n);
    g(i) = a(i) * s * (1.0 - s) + 2.0 * b(i) * xi / (1.0 + xi * xi);
    return g;
  };
  return DecentralizedProblem("toy" + std::to_string(n), n, n, std::move(f),
                              std::move(grad), Vector::Ones(n));
}

DecentralizedProblem toy_problem(int n, std::uint64_t seed) {
  Rng rng(substream(seed, stream_tag("toy-coefficients"), n));
  Vector a(n), b(n);
  for (int i = 0; i < n; ++i) a(i) = rng.gaussian();
  for (int i = 0; i < n; ++i) b(i) = rng.gaussian();
  return toy_problem(n, a, b);
}

DecentralizedProblem VectorResidualProblem::decentralized() const {
  auto res = residual;
  auto jac = jacobian;
  auto f = [res](int i, const Vector& x) {
    double ri = res(x)(i);
    return ri * ri;
  };
  auto grad = [res, jac](int i, const Vector& x) -> Vector {
    double ri = res(x)(i);
    return 2.0 * ri * jac(x).row(i).transpose();
  };
  return DecentralizedProblem(name, n, m, std::move(f), std::move(grad), x0);
}

}  // namespace dds
