#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gal/matrix.hpp"

namespace gal {

struct Split {
  std::vector<int> train;
  std::vector<int> valid;
  std::vector<int> test;
};

// Immutable node-attributed undirected graph with a train/valid/test split.
// Edges are stored canonically (u < v), deduplicated, without self-loops;
// the CSR adjacency is symmetric with binary values. All invariants are
// validated at construction and violations throw DataError.
class Graph {
 public:
  Graph(std::string name, int num_classes, DenseMatrix features,
        std::vector<int> labels, std::vector<std::pair<int, int>> edges,
        Split split);

  const std::string& name() const { return name_; }
  int num_nodes() const { return features_.rows(); }
  int num_classes() const { return num_classes_; }
  int feature_dim() const { return features_.cols(); }
  const DenseMatrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Split& split() const { return split_; }
  const SparseMatrix& adjacency() const { return adjacency_; }

 private:
  std::string name_;
  int num_classes_;
  DenseMatrix features_;
  std::vector<int> labels_;
  std::vector<std::pair<int, int>> edges_;
  Split split_;
  SparseMatrix adjacency_;
};

// Symmetric-normalized adjacency with self-loops: entries
// 1/sqrt(d~_u * d~_v) where d~ is degree-plus-one.
struct NormalizedAdjacency {
  SparseMatrix matrix;
};

// Number of distinct neighbors of v (self-loops never stored).
int degree(const Graph& graph, int v);

NormalizedAdjacency normalized_adjacency(const Graph& graph);

// Train split minus `labeled`, sorted. `labeled` must be a subset of the
// train split.
std::vector<int> candidate_pool(const Graph& graph, std::span<const int> labeled);

}  // namespace gal
