#pragma once

#include <span>
#include <vector>

#include "gal/classifier.hpp"
#include "gal/graph.hpp"
#include "gal/rng.hpp"

namespace gal {

// Uniform pick from the candidate pool.
int select_random(std::span<const int> candidates, Rng& rng);

// Candidate with maximal prediction entropy; lowest node id on ties.
int select_uncertainty(const DenseMatrix& probs, std::span<const int> candidates);

// Candidate with maximal degree; lowest node id on ties.
int select_centrality(const Graph& graph, std::span<const int> candidates);

struct KmeansResult {
  DenseMatrix centroids;        // k x dim
  std::vector<int> assignment;  // per input point, nearest centroid
  std::vector<int> sizes;       // points per cluster
};

// Lloyd's algorithm with k-means++ seeding.
KmeansResult kmeans(const DenseMatrix& points, int k, int max_iters, Rng& rng);

// k-means over candidate embeddings (k clusters, 20 iterations max). Picks
// the candidate closest to the centroid of the largest cluster that no
// labeled node maps to; if every cluster is represented, falls back to the
// candidate closest to any centroid.
int select_coreset(const DenseMatrix& hidden, std::span<const int> candidates,
                   std::span<const int> labeled, int k, Rng& rng);

// Fixed combination weights over the three heuristics; must lie on the
// simplex.
struct AgeWeights {
  double entropy = 1.0 / 3.0;
  double centrality = 1.0 / 3.0;
  double density = 1.0 / 3.0;
};

void validate_age_weights(const AgeWeights& w);

// Per-candidate score: each heuristic is converted to its empirical
// percentile rank within the pool (fraction of candidates with a strictly
// smaller informativeness value) and the ranks are combined with `weights`.
// Density uses closeness to the nearest of k k-means centroids.
std::vector<double> age_score(const Graph& graph, const DenseMatrix& probs,
                              const DenseMatrix& hidden, std::span<const int> candidates,
                              const AgeWeights& weights, int k, Rng& rng);

// argmax of age_score, lowest node id on ties.
int select_age(const Graph& graph, const DenseMatrix& probs, const DenseMatrix& hidden,
               std::span<const int> candidates, const AgeWeights& weights, int k,
               Rng& rng);

}  // namespace gal
