#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gal/graph.hpp"
#include "gal/policy.hpp"

namespace gal {

// Stochastic block model: balanced classes, intra-class edges with p_in,
// inter-class with p_out, features = class centroid + Gaussian noise.
struct SbmConfig {
  int num_nodes = 300;
  int num_classes = 4;
  double p_in = 0.1;
  double p_out = 0.01;
  int feat_dim = 8;
  double noise_sigma = 1.0;
  double separation = 1.0;  // scale of the random class centroids
  uint64_t seed = 0;
  double valid_frac = 0.15;
  double test_frac = 0.30;
  std::string name;  // empty -> derived from the parameters
};

Graph generate_sbm(const SbmConfig& config);

// The class centroids the generator draws for `config` (row c = class c).
DenseMatrix sbm_class_centroids(const SbmConfig& config);

// Single-document JSON graph format: name, num_nodes, num_classes, features,
// labels, edges ([u,v] with u<v), splits {train, valid, test}. Loading
// validates every Graph invariant; violations throw DataError with a
// distinct code and the offending index.
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& graph, const std::filesystem::path& path);

struct CheckpointMeta {
  std::vector<std::string> training_graphs;
  uint64_t seed = 0;
  int episodes = 0;
};

struct Checkpoint {
  Policy policy;
  CheckpointMeta meta;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gal
