#include "dds/penalty.hpp"

#include <cmath>
#include <string>

namespace dds {

double NeighborCopies::dot(int j, const Vector& v, int asking_agent) const {
  if (stacked_) {
    if (j < 0 || j >= stacked_->rows())
      throw std::invalid_argument("neighbor index out of range");
    return stacked_->row(j).dot(v);
  }
  auto it = map_->find(j);
  if (it == map_->end())
    throw std::invalid_argument("missing neighbor copy for pair (" +
                                std::to_string(asking_agent) + ", " +
                                std::to_string(j) + ")");
  return it->second.dot(v);
}

void NeighborCopies::add_scaled(int j, double s, Vector& acc,
                                int asking_agent) const {
  if (stacked_) {
    if (j < 0 || j >= stacked_->rows())
      throw std::invalid_argument("neighbor index out of range");
    acc += s * stacked_->row(j).transpose();
    return;
  }
  auto it = map_->find(j);
  if (it == map_->end())
    throw std::invalid_argument("missing neighbor copy for pair (" +
                                std::to_string(asking_agent) + ", " +
                                std::to_string(j) + ")");
  acc += s * it->second;
}

double penalty_value(const MixingMatrix& w, const Matrix& x, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (x.rows() != w.size())
    throw std::invalid_argument("stacked iterate row count != agent count");
  double acc = 0.0;
  for (auto [a, b] : w.graph().edges())
    acc += w.weight(a, b) * (x.row(a) - x.row(b)).squaredNorm();
  // Each unordered edge appears once above but twice in sum_ij, hence 1/2
  // instead of 1/4.
  return acc / (2.0 * gamma);
}

Matrix penalty_gradient(const MixingMatrix& w, const Matrix& x, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return (x - mix(w, x)) / gamma;
}

double penalized_objective(const DecentralizedProblem& p, const MixingMatrix& w,
                           const Matrix& x, double gamma) {
  if (p.agents() != w.size())
    throw std::invalid_argument("problem and network disagree on agent count");
  double f = 0.0;
  for (int i = 0; i < p.agents(); ++i)
    f += p.eval_local(i, x.row(i).transpose(), EvalChannel::Monitor);
  return f + penalty_value(w, x, gamma);
}

double local_coupling(const MixingMatrix& w, int i, const Vector& xi,
                      const NeighborCopies& nbrs, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  double cross = 0.0;
  for (int j : w.graph().neighbors(i)) cross += w.weight(i, j) * nbrs.dot(j, xi, i);
  return ((1.0 - w.self_weight(i)) * xi.squaredNorm() - 2.0 * cross) /
         (2.0 * gamma);
}

double local_surrogate(const MixingMatrix& w, int i, const Vector& xi,
                       const NeighborCopies& nbrs, double gamma,
                       const std::function<double(const Vector&)>& fi) {
  return fi(xi) + local_coupling(w, i, xi, nbrs, gamma);
}

Vector local_surrogate_gradient(const MixingMatrix& w, int i, const Vector& xi,
                                const NeighborCopies& nbrs, double gamma,
                                const Vector& grad_fi_at_xi) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  Vector g = (1.0 - w.self_weight(i)) * xi;
  for (int j : w.graph().neighbors(i)) nbrs.add_scaled(j, -w.weight(i, j), g, i);
  return grad_fi_at_xi + g / gamma;
}

}  // namespace dds
