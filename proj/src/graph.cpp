#include "gal/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gal {

namespace {

void check_split_set(const std::vector<int>& ids, int num_nodes, const char* which,
                     std::vector<char>& seen) {
  for (int v : ids) {
    if (v < 0 || v >= num_nodes) {
      std::ostringstream os;
      os << which << " split contains node " << v << " outside [0," << num_nodes << ")";
      throw DataError(DataCode::NodeRange, os.str());
    }
    if (seen[v]) {
      std::ostringstream os;
      os << "node " << v << " appears in more than one split set (or twice in "
         << which << ")";
      throw DataError(DataCode::SplitOverlap, os.str());
    }
    seen[v] = 1;
  }
}

SparseMatrix build_adjacency(int num_nodes,
                             const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> neighbors(num_nodes);
  for (const auto& [u, v] : edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  SparseMatrix adj;
  adj.rows = adj.cols = num_nodes;
  adj.row_offsets.assign(num_nodes + 1, 0);
  for (int u = 0; u < num_nodes; ++u) {
    std::sort(neighbors[u].begin(), neighbors[u].end());
    adj.row_offsets[u + 1] = adj.row_offsets[u] + static_cast<int>(neighbors[u].size());
  }
  adj.col_indices.reserve(adj.row_offsets.back());
  adj.values.assign(adj.row_offsets.back(), 1.0);
  for (int u = 0; u < num_nodes; ++u) {
    adj.col_indices.insert(adj.col_indices.end(), neighbors[u].begin(), neighbors[u].end());
  }
  return adj;
}

}  // namespace

Graph::Graph(std::string name, int num_classes, DenseMatrix features,
             std::vector<int> labels, std::vector<std::pair<int, int>> edges,
             Split split)
    : name_(std::move(name)),
      num_classes_(num_classes),
      features_(std::move(features)),
      labels_(std::move(labels)),
      edges_(std::move(edges)),
      split_(std::move(split)) {
  const int n = features_.rows();
  if (num_classes_ < 1) {
    throw DataError(DataCode::Malformed, "num_classes must be at least 1");
  }
  if (static_cast<int>(labels_.size()) != n) {
    std::ostringstream os;
    os << "label count " << labels_.size() << " != feature row count " << n;
    throw DataError(DataCode::FeatureDim, os.str());
  }
  for (int v = 0; v < n; ++v) {
    if (labels_[v] < 0 || labels_[v] >= num_classes_) {
      std::ostringstream os;
      os << "labels[" << v << "] = " << labels_[v] << " outside [0," << num_classes_ << ")";
      throw DataError(DataCode::LabelRange, os.str());
    }
  }
  if (!features_.all_finite()) {
    throw DataError(DataCode::Malformed, "features contain non-finite values");
  }

  std::set<std::pair<int, int>> seen_edges;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& [u, v] = edges_[i];
    std::ostringstream where;
    where << "edges[" << i << "] = (" << u << "," << v << ")";
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw DataError(DataCode::NodeRange, where.str() + ": node id out of range");
    }
    if (u == v) {
      throw DataError(DataCode::SelfLoop, where.str() + ": self-loop");
    }
    if (u > v) {
      throw DataError(DataCode::EdgeOrder, where.str() + ": endpoints must satisfy u < v");
    }
    if (!seen_edges.insert({u, v}).second) {
      throw DataError(DataCode::DuplicateEdge, where.str() + ": duplicate edge");
    }
  }

  std::vector<char> seen(n, 0);
  check_split_set(split_.train, n, "train", seen);
  check_split_set(split_.valid, n, "valid", seen);
  check_split_set(split_.test, n, "test", seen);
  std::sort(split_.train.begin(), split_.train.end());
  std::sort(split_.valid.begin(), split_.valid.end());
  std::sort(split_.test.begin(), split_.test.end());

  adjacency_ = build_adjacency(n, edges_);
}

int degree(const Graph& graph, int v) {
  GAL_REQUIRE(v >= 0 && v < graph.num_nodes(), "degree: node id out of range");
  return graph.adjacency().row_nnz(v);
}

NormalizedAdjacency normalized_adjacency(const Graph& graph) {
  const SparseMatrix& adj = graph.adjacency();
  const int n = graph.num_nodes();
  std::vector<double> inv_sqrt_deg(n);
  for (int v = 0; v < n; ++v) {
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(adj.row_nnz(v)) + 1.0);
  }

  NormalizedAdjacency result;
  SparseMatrix& m = result.matrix;
  m.rows = m.cols = n;
  m.row_offsets.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    m.row_offsets[v + 1] = m.row_offsets[v] + adj.row_nnz(v) + 1;  // +1 self-loop
  }
  m.col_indices.reserve(m.row_offsets.back());
  m.values.reserve(m.row_offsets.back());
  for (int u = 0; u < n; ++u) {
    bool self_done = false;
    for (int k = adj.row_offsets[u]; k < adj.row_offsets[u + 1]; ++k) {
      const int v = adj.col_indices[k];
      if (!self_done && u < v) {
        m.col_indices.push_back(u);
        m.values.push_back(inv_sqrt_deg[u] * inv_sqrt_deg[u]);
        self_done = true;
      }
      m.col_indices.push_back(v);
      m.values.push_back(inv_sqrt_deg[u] * inv_sqrt_deg[v]);
    }
    if (!self_done) {
      m.col_indices.push_back(u);
      m.values.push_back(inv_sqrt_deg[u] * inv_sqrt_deg[u]);
    }
  }
  return result;
}

std::vector<int> candidate_pool(const Graph& graph, std::span<const int> labeled) {
  const Split& split = graph.split();
  std::vector<char> is_labeled(graph.num_nodes(), 0);
  std::vector<char> is_train(graph.num_nodes(), 0);
  for (int v : split.train) is_train[v] = 1;
  for (int v : labeled) {
    GAL_REQUIRE(v >= 0 && v < graph.num_nodes() && is_train[v],
                "candidate_pool: labeled node outside train split");
    is_labeled[v] = 1;
  }
  std::vector<int> pool;
  pool.reserve(split.train.size());
  for (int v : split.train) {
    if (!is_labeled[v]) pool.push_back(v);
  }
  return pool;
}

}  // namespace gal
