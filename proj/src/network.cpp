#include "dds/network.hpp"

#include "dds/csv.hpp"
#include "dds/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

namespace dds {
namespace {

// Union-find connectivity; the test suite checks the same property with an
// independent breadth-first search.
bool connected(int m, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int components = m;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

Graph::Graph(int m, std::vector<std::pair<int, int>> edges)
    : m_(m), edges_(std::move(edges)), nbrs_(std::max(m, 0)) {
  if (m < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    auto& [a, b] = e;
    if (a < 0 || b < 0 || a >= m_ || b >= m_)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self loops are not allowed");
    if (a > b) std::swap(a, b);
    if (!seen.insert(e).second)
      throw std::invalid_argument("duplicate edge in edge list");
  }
  if (!connected(m_, edges_))
    throw std::invalid_argument("graph is not connected");
  for (auto [a, b] : edges_) {
    nbrs_[a].push_back(b);
    nbrs_[b].push_back(a);
  }
  for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(int i, int j) const {
  const auto& nb = nbrs_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

Graph generate_graph(int m, double edge_prob, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("random graph needs m >= 2");
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    throw std::invalid_argument("edge probability must be in (0, 1]");
  constexpr int kMaxAttempts = 1024;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(substream(seed, stream_tag("graph-draw"), attempt));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (rng.uniform() < edge_prob) edges.emplace_back(a, b);
    if (connected(m, edges)) return Graph(m, std::move(edges));
  }
  throw std::runtime_error(
      "no connected graph on m=" + std::to_string(m) + " with edge_prob=" +
      format_g17(edge_prob) + " after 1024 attempts");
}

SpectralReport spectral_report(const Matrix& w, const Graph* graph) {
  if (w.rows() != w.cols() || w.rows() < 1)
    throw std::invalid_argument("mixing matrix must be square and nonempty");
  const int m = static_cast<int>(w.rows());
  SpectralReport r;

  const bool symmetric = (w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
  bool nonneg = w.minCoeff() >= 0.0;
  bool support_ok = true;
  if (graph) {
    if (graph->size() != m)
      throw std::invalid_argument("graph size does not match matrix size");
    for (int i = 0; i < m && support_ok; ++i)
      for (int j = 0; j < m && support_ok; ++j) {
        bool allowed = (i == j) || graph->adjacent(i, j);
        if ((w(i, j) > 0.0) != allowed && i != j) support_ok = false;
        if (i == j && w(i, j) <= 0.0) support_ok = false;
      }
    r.pattern_checked_against_graph = true;
  }
  r.pattern_ok = symmetric && nonneg && support_ok;

  const double row_err = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_err = (w.colwise().sum().array() - 1.0).abs().maxCoeff();
  r.stochastic_ok = row_err <= 1e-12 && col_err <= 1e-12;

  // Eigen returns ascending eigenvalues for self-adjoint problems; the
  // report stores them descending.  A non-symmetric candidate is still
  // reported through its symmetric part.
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (w + w.transpose()));
  r.eigenvalues = es.eigenvalues().reverse();

  const double l1 = r.eigenvalues(0);
  const double lm = r.eigenvalues(m - 1);
  if (m == 1) {
    r.zeta = 0.0;
    r.spectrum_ok = std::abs(l1 - 1.0) <= 1e-10;
    r.lambda_min_nonpositive = lm <= 0.0;
  } else {
    const double l2 = r.eigenvalues(1);
    r.zeta = std::max(std::abs(l2), std::abs(lm));
    r.spectrum_ok =
        std::abs(l1 - 1.0) <= 1e-10 && l2 < 1.0 - 1e-12 && lm > -1.0 + 1e-12;
    r.lambda_min_nonpositive = lm <= 0.0;
  }
  return r;
}

MixingMatrix::MixingMatrix(Graph graph, Matrix w)
    : graph_(std::move(graph)), w_(std::move(w)) {
  if (w_.rows() != graph_.size() || w_.cols() != graph_.size())
    throw InvariantViolation("dimension",
                             "weight matrix does not match graph size");
  SpectralReport r = spectral_report(w_, &graph_);
  if (!r.pattern_ok)
    throw InvariantViolation("pattern",
                             "weights must be symmetric, nonnegative, and "
                             "supported exactly on the graph plus diagonal");
  if (!r.stochastic_ok)
    throw InvariantViolation("stochasticity",
                             "row/column sums deviate from 1 beyond 1e-12");
  if (!r.spectrum_ok)
    throw InvariantViolation(
        "spectrum", "need lambda_1 = 1 simple and lambda_m > -1");
  eigenvalues_ = std::move(r.eigenvalues);
  zeta_ = r.zeta;
  if (!(zeta_ >= 0.0 && zeta_ < 1.0))
    throw InvariantViolation("contraction", "zeta outside [0, 1)");
}

MixingMatrix build_mixing_matrix(const Graph& graph) {
  const int m = graph.size();
  Matrix w = Matrix::Zero(m, m);
  for (auto [a, b] : graph.edges())
    w(a, b) = w(b, a) =
        1.0 / (1.0 + std::max(graph.degree(a), graph.degree(b)));
  for (int i = 0; i < m; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return MixingMatrix(graph, std::move(w));
}

Matrix mix(const MixingMatrix& w, const Matrix& x) {
  if (x.rows() != w.size())
    throw std::invalid_argument(
        "stacked iterate has " + std::to_string(x.rows()) +
        " rows but the network has " + std::to_string(w.size()) + " agents");
  return w.matrix() * x;
}

Matrix average_project(const Matrix& x) {
  if (x.rows() < 1) throw std::invalid_argument("empty stacked iterate");
  Eigen::RowVectorXd mean = x.colwise().mean();
  return Eigen::VectorXd::Ones(x.rows()) * mean;
}

void write_mixing_csv(const MixingMatrix& w, std::ostream& out) {
  const int m = w.size();
  for (int i = 0; i < m; ++i) {
    out << "w";
    for (int j = 0; j < m; ++j) out << "," << format_g17(w.weight(i, j));
    out << "\n";
  }
  out << "eigenvalues";
  for (int i = 0; i < m; ++i) out << "," << format_g17(w.eigenvalues()(i));
  out << "\n";
  out << "zeta," << format_g17(w.zeta()) << "\n";
}

}  // namespace dds
