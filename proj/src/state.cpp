#include "gal/state.hpp"

#include <algorithm>
#include <cmath>

#include "gal/numerics.hpp"

namespace gal {

std::vector<double> degree_feature(const Graph& graph, double alpha) {
  GAL_REQUIRE(alpha > 0.0, "degree_feature: alpha must be positive");
  std::vector<double> col(graph.num_nodes());
  for (int v = 0; v < graph.num_nodes(); ++v) {
    col[v] = std::min(static_cast<double>(degree(graph, v)) / alpha, 1.0);
  }
  return col;
}

std::vector<double> entropy_feature(const DenseMatrix& probs) {
  const int c = probs.cols();
  GAL_REQUIRE(c >= 2, "entropy_feature: need at least 2 classes");
  const double inv_log_c = 1.0 / std::log(static_cast<double>(c));
  std::vector<double> col(probs.rows());
  for (int r = 0; r < probs.rows(); ++r) {
    const double* p = probs.row(r);
    double h = 0.0;
    for (int j = 0; j < c; ++j) h -= p[j] * std::log(p[j] + kLogEps);
    col[r] = std::clamp(h * inv_log_c, 0.0, 1.0);
  }
  return col;
}

namespace {

double kl_divergence(const double* p, const double* q, int c) {
  double kl = 0.0;
  for (int j = 0; j < c; ++j) {
    kl += p[j] * (std::log(p[j] + kLogEps) - std::log(q[j] + kLogEps));
  }
  return kl;
}

}  // namespace

KlColumns kl_features(const Graph& graph, const DenseMatrix& probs) {
  const int n = graph.num_nodes();
  const int c = probs.cols();
  const SparseMatrix& adj = graph.adjacency();
  KlColumns cols;
  cols.forward.assign(n, 0.0);
  cols.reverse.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const int deg = adj.row_nnz(v);
    if (deg == 0) continue;
    const double* pv = probs.row(v);
    double fwd = 0.0, rev = 0.0;
    for (int k = adj.row_offsets[v]; k < adj.row_offsets[v + 1]; ++k) {
      const double* pu = probs.row(adj.col_indices[k]);
      fwd += kl_divergence(pv, pu, c);
      rev += kl_divergence(pu, pv, c);
    }
    cols.forward[v] = fwd / deg;
    cols.reverse[v] = rev / deg;
  }
  return cols;
}

std::vector<double> indicator_feature(const Graph& graph, std::span<const int> labeled) {
  std::vector<char> is_train(graph.num_nodes(), 0);
  for (int v : graph.split().train) is_train[v] = 1;
  std::vector<double> col(graph.num_nodes(), 0.0);
  for (int v : labeled) {
    GAL_REQUIRE(v >= 0 && v < graph.num_nodes() && is_train[v],
                "indicator_feature: labeled node outside train split");
    col[v] = 1.0;
  }
  return col;
}

GraphState build_state(const Graph& graph, const DenseMatrix& probs,
                       std::span<const int> labeled, double alpha,
                       const FeatureMask& mask) {
  GAL_REQUIRE(probs.rows() == graph.num_nodes(),
              "build_state: probs row count must equal node count");
  const int n = graph.num_nodes();
  GraphState state;
  state.alpha = alpha;
  state.matrix = DenseMatrix(n, 5);

  if (mask.keep[kStateDegree]) {
    const auto col = degree_feature(graph, alpha);
    for (int v = 0; v < n; ++v) state.matrix(v, kStateDegree) = col[v];
  }
  if (mask.keep[kStateEntropy]) {
    const auto col = entropy_feature(probs);
    for (int v = 0; v < n; ++v) state.matrix(v, kStateEntropy) = col[v];
  }
  if (mask.keep[kStateKlForward] || mask.keep[kStateKlReverse]) {
    const auto kl = kl_features(graph, probs);
    for (int v = 0; v < n; ++v) {
      if (mask.keep[kStateKlForward]) state.matrix(v, kStateKlForward) = kl.forward[v];
      if (mask.keep[kStateKlReverse]) state.matrix(v, kStateKlReverse) = kl.reverse[v];
    }
  }
  if (mask.keep[kStateLabeled]) {
    const auto col = indicator_feature(graph, labeled);
    for (int v = 0; v < n; ++v) state.matrix(v, kStateLabeled) = col[v];
  }
  return state;
}

}  // namespace gal
