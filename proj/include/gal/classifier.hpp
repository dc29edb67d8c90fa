#pragma once

#include <cstdint>
#include <span>

#include "gal/graph.hpp"
#include "gal/numerics.hpp"

namespace gal {

// Weights of a 2-layer GCN: hidden = relu(A_hat X W0), logits = A_hat hidden W1.
struct GcnParams {
  DenseMatrix w0;
  DenseMatrix w1;
};

struct ClassifierConfig {
  int hidden = 64;
  double lr = 0.03;
  double weight_decay = 0.0005;
  int max_convergence_epochs = 300;
  int patience = 20;
};

// Glorot-uniform initialization, deterministic given seed.
GcnParams init_classifier(const Graph& graph, const ClassifierConfig& config,
                          uint64_t seed);

struct GcnForward {
  DenseMatrix hidden;  // n x hidden, post-ReLU
  DenseMatrix probs;   // n x C, rows are distributions
};

GcnForward classifier_forward(const GcnParams& params, const NormalizedAdjacency& adj,
                              const DenseMatrix& features);

struct ClassifierGrad {
  double loss = 0.0;
  DenseMatrix d_w0;
  DenseMatrix d_w1;
};

// Cross-entropy loss over `labeled` and its analytic gradient w.r.t. W0, W1.
// `labels` is indexed by node id and must be valid on labeled rows.
ClassifierGrad classifier_loss_grad(const GcnParams& params,
                                    const NormalizedAdjacency& adj,
                                    const DenseMatrix& features,
                                    std::span<const int> labeled,
                                    std::span<const int> labels);

// Bundles parameters, optimizer state, and per-graph caches for the
// query-step training loop. The cached A_hat*X product never changes for a
// fixed graph.
class Classifier {
 public:
  Classifier(const Graph& graph, const NormalizedAdjacency& adj,
             const ClassifierConfig& config, uint64_t seed);

  // One full-batch gradient step; returns the pre-step loss.
  double train_one_epoch(std::span<const int> labeled, std::span<const int> labels);

  // Early stopping on validation micro-F1: stops after `patience` consecutive
  // epochs without improvement (or max_convergence_epochs), then restores the
  // best-validation snapshot. Returns epochs run.
  int train_to_convergence(std::span<const int> labeled, std::span<const int> labels,
                           std::span<const int> valid_nodes,
                           std::span<const int> valid_labels);

  // Recomputes the forward pass with the current weights.
  GcnForward forward() const;

  // Class predictions (argmax, lowest class id on ties) for every node.
  std::vector<int> predict() const;

  const GcnParams& params() const { return params_; }
  GcnParams& params() { return params_; }
  const ClassifierConfig& config() const { return config_; }
  const AdamState& optimizer() const { return opt_; }

 private:
  const Graph& graph_;
  const NormalizedAdjacency& adj_;
  ClassifierConfig config_;
  GcnParams params_;
  AdamState opt_;
  DenseMatrix ax_;  // cached spmm(A_hat, X)
};

// Pooled F1 over all classes; equals accuracy for single-label multiclass.
double micro_f1(std::span<const int> pred, std::span<const int> truth);

// Unweighted mean of per-class F1. Classes with TP=FP=FN=0 are excluded;
// throws if every class is excluded.
double macro_f1(std::span<const int> pred, std::span<const int> truth, int num_classes);

}  // namespace gal
