#pragma once

#include <array>
#include <span>
#include <string>

#include "gal/graph.hpp"

namespace gal {

// Which of the five state columns stay active. Masked columns are zeroed,
// not removed, so one policy shape serves every ablation.
struct FeatureMask {
  std::array<bool, 5> keep{true, true, true, true, true};

  bool operator==(const FeatureMask&) const = default;
};

inline constexpr int kStateDegree = 0;
inline constexpr int kStateEntropy = 1;
inline constexpr int kStateKlForward = 2;
inline constexpr int kStateKlReverse = 3;
inline constexpr int kStateLabeled = 4;

// Per-node state matrix: [scaled degree, normalized entropy,
// mean KL(v || neighbors), mean KL(neighbors || v), labeled indicator].
struct GraphState {
  DenseMatrix matrix;  // n x 5
  double alpha = 20.0;
};

// min(degree/alpha, 1) per node.
std::vector<double> degree_feature(const Graph& graph, double alpha);

// H(row)/ln(C) per row, eps-smoothed, clamped to [0, 1]. Requires C >= 2.
std::vector<double> entropy_feature(const DenseMatrix& probs);

struct KlColumns {
  std::vector<double> forward;  // mean KL(v || u) over neighbors u
  std::vector<double> reverse;  // mean KL(u || v) over neighbors u
};

// Isolated nodes get 0 in both columns.
KlColumns kl_features(const Graph& graph, const DenseMatrix& probs);

// 1 on labeled nodes, 0 elsewhere. labeled must lie in the train split.
std::vector<double> indicator_feature(const Graph& graph, std::span<const int> labeled);

GraphState build_state(const Graph& graph, const DenseMatrix& probs,
                       std::span<const int> labeled, double alpha,
                       const FeatureMask& mask);

}  // namespace gal
