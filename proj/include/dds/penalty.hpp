#pragma once

#include "dds/network.hpp"
#include "dds/problems.hpp"
#include "dds/types.hpp"

#include <functional>
#include <map>

namespace dds {

// Read-only view of the iterate copies an agent can see, backed either by
// the full stacked iterate (simulator path) or an explicit {agent: copy}
// map (message-passing path).  Non-owning; the backing store must outlive
// the view.  Looking up an absent neighbor names the offending pair.
class NeighborCopies {
 public:
  NeighborCopies(const Matrix& stacked) : stacked_(&stacked) {}
  NeighborCopies(const std::map<int, Vector>& copies) : map_(&copies) {}

  // x_j . v
  double dot(int j, const Vector& v, int asking_agent) const;
  // acc += s * x_j
  void add_scaled(int j, double s, Vector& acc, int asking_agent) const;

 private:
  const Matrix* stacked_ = nullptr;
  const std::map<int, Vector>* map_ = nullptr;
};

// Disagreement penalty (1/(2 gamma)) X^T (I - W (x) I) X for the stacked
// iterate, evaluated through the pairwise form
//   (1/(4 gamma)) sum_ij w_ij ||x_i - x_j||^2,
// which is algebraically identical for symmetric doubly stochastic W and
// nonnegative term by term.
double penalty_value(const MixingMatrix& w, const Matrix& x, double gamma);

// Gradient of the penalty, stacked like x: (1/gamma) (x - mix(w, x)).
Matrix penalty_gradient(const MixingMatrix& w, const Matrix& x, double gamma);

// sum_i f_i(x_i) + penalty_value, objective terms charged to the
// monitoring channel.
double penalized_objective(const DecentralizedProblem& p, const MixingMatrix& w,
                           const Matrix& x, double gamma);

// Coupling part of agent i's local surrogate:
//   (1/(2 gamma)) [ (1 - w_ii) ||x_i||^2 - 2 sum_{j in N_i} w_ij x_i . x_j ].
double local_coupling(const MixingMatrix& w, int i, const Vector& xi,
                      const NeighborCopies& nbrs, double gamma);

// Agent i's local surrogate value f_i(x_i) + local_coupling.  The sum over
// agents of the pure quadratic parts double-counts each edge; identities
// against the stacked penalty go through the gradient, not the values.
double local_surrogate(const MixingMatrix& w, int i, const Vector& xi,
                       const NeighborCopies& nbrs, double gamma,
                       const std::function<double(const Vector&)>& fi);

// Gradient of the local surrogate in x_i:
//   grad_fi + (1/gamma) [ (1 - w_ii) x_i - sum_{j in N_i} w_ij x_j ].
// Stacking these rows over all agents equals
//   grad F + (1/gamma) (I - W (x) I) X.
Vector local_surrogate_gradient(const MixingMatrix& w, int i, const Vector& xi,
                                const NeighborCopies& nbrs, double gamma,
                                const Vector& grad_fi_at_xi);

}  // namespace dds
