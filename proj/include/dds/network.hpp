#pragma once

#include "dds/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace dds {

// Undirected simple graph on vertices 0..m-1.  Construction validates the
// edge list (endpoints in range, no self loops, no duplicates) and rejects
// disconnected graphs.
class Graph {
 public:
  Graph(int m, std::vector<std::pair<int, int>> edges);

  int size() const { return m_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return nbrs_[i]; }
  int degree(int i) const { return static_cast<int>(nbrs_[i].size()); }
  bool adjacent(int i, int j) const;

 private:
  int m_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> nbrs_;
};

// Erdos-Renyi draw: each unordered pair is an edge with probability
// edge_prob.  Disconnected draws are rejected and resampled from a fresh
// substream; gives up with an error after 1024 attempts.
Graph generate_graph(int m, double edge_prob, std::uint64_t seed);

// Diagnostic decomposition of a candidate mixing matrix.  Computable for
// matrices that fail the requirements, so each condition is reported
// separately rather than enforced.
struct SpectralReport {
  Vector eigenvalues;  // sorted descending
  double zeta = 0.0;   // max(|lambda_2|, |lambda_m|); defined as 0 for m == 1
  bool pattern_ok = false;     // symmetric, nonnegative, support = graph + diagonal
  bool stochastic_ok = false;  // every row and column sums to 1
  bool spectrum_ok = false;    // lambda_1 == 1 simple, lambda_m > -1
  bool lambda_min_nonpositive = false;  // informational only, never enforced
  bool pattern_checked_against_graph = false;

  bool admissible() const { return pattern_ok && stochastic_ok && spectrum_ok; }
};

// When `graph` is null the support condition degenerates to symmetry plus
// nonnegativity and is flagged as not checked against a graph.
SpectralReport spectral_report(const Matrix& w, const Graph* graph = nullptr);

// Symmetric doubly stochastic consensus weights with spectral data attached.
// Off-diagonal support coincides with the graph edges; the eigenvalues
// satisfy lambda_1 = 1 > lambda_2 and lambda_m > -1, so the contraction
// factor zeta = max(|lambda_2|, |lambda_m|) lies in [0, 1).
class MixingMatrix {
 public:
  // Validates `w` against `graph`; throws InvariantViolation naming the
  // first failing condition.
  MixingMatrix(Graph graph, Matrix w);

  const Graph& graph() const { return graph_; }
  const Matrix& matrix() const { return w_; }
  int size() const { return graph_.size(); }
  double weight(int i, int j) const { return w_(i, j); }
  double self_weight(int i) const { return w_(i, i); }
  const Vector& eigenvalues() const { return eigenvalues_; }  // descending
  double zeta() const { return zeta_; }

 private:
  Graph graph_;
  Matrix w_;
  Vector eigenvalues_;
  double zeta_ = 0.0;
};

// Metropolis weights on `graph`:
//   w_ij = 1 / (1 + max(deg_i, deg_j))  for every edge {i, j}
//   w_ii = 1 - sum of the off-diagonal row entries.
MixingMatrix build_mixing_matrix(const Graph& graph);

// One synchronous communication round applied to a stacked iterate (one
// agent per row): row i of the result is sum_j w_ij x_j.
Matrix mix(const MixingMatrix& w, const Matrix& x);

// Projection onto consensus: every row is replaced by the row average.
Matrix average_project(const Matrix& x);

// Writes the weight matrix (row-major) followed by the spectral summary.
void write_mixing_csv(const MixingMatrix& w, std::ostream& out);

}  // namespace dds
