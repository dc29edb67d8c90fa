#include "gal/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "gal/rng.hpp"

namespace gal {

namespace {

DenseMatrix glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  DenseMatrix m(fan_in, fan_out);
  for (double& v : m.values()) v = rng.uniform(-bound, bound);
  return m;
}

}  // namespace

GcnParams init_classifier(const Graph& graph, const ClassifierConfig& config,
                          uint64_t seed) {
  GAL_REQUIRE(config.hidden > 0, "hidden size must be positive");
  Rng rng(mix_seed(seed, 0x9c1a5 /* classifier init stream */));
  GcnParams params;
  params.w0 = glorot_uniform(graph.feature_dim(), config.hidden, rng);
  params.w1 = glorot_uniform(config.hidden, graph.num_classes(), rng);
  return params;
}

GcnForward classifier_forward(const GcnParams& params, const NormalizedAdjacency& adj,
                              const DenseMatrix& features) {
  GcnForward out;
  const DenseMatrix ax = spmm(adj.matrix, features);
  out.hidden = relu(matmul(ax, params.w0));
  const DenseMatrix logits = matmul(spmm(adj.matrix, out.hidden), params.w1);
  out.probs = row_softmax(logits);
  return out;
}

ClassifierGrad classifier_loss_grad(const GcnParams& params,
                                    const NormalizedAdjacency& adj,
                                    const DenseMatrix& features,
                                    std::span<const int> labeled,
                                    std::span<const int> labels) {
  const DenseMatrix ax = spmm(adj.matrix, features);
  const DenseMatrix z0 = matmul(ax, params.w0);
  const DenseMatrix h1 = relu(z0);
  const DenseMatrix ah1 = spmm(adj.matrix, h1);
  const DenseMatrix probs = row_softmax(matmul(ah1, params.w1));

  CrossEntropyResult ce = cross_entropy(probs, labels, labeled);

  ClassifierGrad grad;
  grad.loss = ce.loss;
  grad.d_w1 = matmul_at_b(ah1, ce.logit_grad);
  // A_hat is symmetric, so backprop through spmm reuses the same matrix.
  const DenseMatrix dh1 = spmm(adj.matrix, matmul_a_bt(ce.logit_grad, params.w1));
  const DenseMatrix dz0 = relu_backward(z0, dh1);
  grad.d_w0 = matmul_at_b(ax, dz0);
  return grad;
}

Classifier::Classifier(const Graph& graph, const NormalizedAdjacency& adj,
                       const ClassifierConfig& config, uint64_t seed)
    : graph_(graph),
      adj_(adj),
      config_(config),
      params_(init_classifier(graph, config, seed)),
      ax_(spmm(adj.matrix, graph.features())) {
  GAL_REQUIRE(config.patience < config.max_convergence_epochs,
              "patience must be below max_convergence_epochs");
  const DenseMatrix* ps[] = {&params_.w0, &params_.w1};
  opt_ = make_adam(ps, config.lr, config.weight_decay);
}

double Classifier::train_one_epoch(std::span<const int> labeled,
                                   std::span<const int> labels) {
  const DenseMatrix z0 = matmul(ax_, params_.w0);
  const DenseMatrix h1 = relu(z0);
  const DenseMatrix ah1 = spmm(adj_.matrix, h1);
  const DenseMatrix probs = row_softmax(matmul(ah1, params_.w1));

  CrossEntropyResult ce = cross_entropy(probs, labels, labeled);
  const DenseMatrix d_w1 = matmul_at_b(ah1, ce.logit_grad);
  const DenseMatrix dh1 = spmm(adj_.matrix, matmul_a_bt(ce.logit_grad, params_.w1));
  const DenseMatrix dz0 = relu_backward(z0, dh1);
  const DenseMatrix d_w0 = matmul_at_b(ax_, dz0);

  DenseMatrix* ps[] = {&params_.w0, &params_.w1};
  const DenseMatrix* gs[] = {&d_w0, &d_w1};
  adam_step(ps, gs, opt_);
  return ce.loss;
}

int Classifier::train_to_convergence(std::span<const int> labeled,
                                     std::span<const int> labels,
                                     std::span<const int> valid_nodes,
                                     std::span<const int> valid_labels) {
  auto validation_f1 = [&]() {
    const std::vector<int> pred = predict();
    std::vector<int> valid_pred;
    valid_pred.reserve(valid_nodes.size());
    for (int v : valid_nodes) valid_pred.push_back(pred[v]);
    return micro_f1(valid_pred, valid_labels);
  };

  double best_f1 = validation_f1();
  GcnParams best = params_;
  int epochs_without_improvement = 0;
  int epoch = 0;
  while (epoch < config_.max_convergence_epochs) {
    train_one_epoch(labeled, labels);
    ++epoch;
    const double f1 = validation_f1();
    if (f1 > best_f1) {
      best_f1 = f1;
      best = params_;
      epochs_without_improvement = 0;
    } else {
      ++epochs_without_improvement;
    }
    if (epochs_without_improvement >= config_.patience) break;
  }
  params_ = std::move(best);
  return epoch;
}

GcnForward Classifier::forward() const {
  GcnForward out;
  out.hidden = relu(matmul(ax_, params_.w0));
  out.probs = row_softmax(matmul(spmm(adj_.matrix, out.hidden), params_.w1));
  return out;
}

std::vector<int> Classifier::predict() const {
  // Softmax is monotone, so argmax over logits suffices.
  const DenseMatrix logits =
      matmul(spmm(adj_.matrix, relu(matmul(ax_, params_.w0))), params_.w1);
  std::vector<int> pred(logits.rows());
  for (int r = 0; r < logits.rows(); ++r) {
    const double* row = logits.row(r);
    int best = 0;
    for (int c = 1; c < logits.cols(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    pred[r] = best;
  }
  return pred;
}

double micro_f1(std::span<const int> pred, std::span<const int> truth) {
  GAL_REQUIRE(!pred.empty(), "micro_f1: empty input");
  GAL_REQUIRE(pred.size() == truth.size(), "micro_f1: length mismatch");
  // Pooled counts over classes: every wrong prediction is one FP and one FN.
  size_t tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i]) {
      ++tp;
    } else {
      ++fp;
      ++fn;
    }
  }
  return static_cast<double>(tp) /
         (static_cast<double>(tp) + 0.5 * static_cast<double>(fp + fn));
}

double macro_f1(std::span<const int> pred, std::span<const int> truth, int num_classes) {
  GAL_REQUIRE(!pred.empty(), "macro_f1: empty input");
  GAL_REQUIRE(pred.size() == truth.size(), "macro_f1: length mismatch");
  GAL_REQUIRE(num_classes > 0, "macro_f1: num_classes must be positive");
  std::vector<size_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
  for (size_t i = 0; i < pred.size(); ++i) {
    GAL_REQUIRE(pred[i] >= 0 && pred[i] < num_classes, "macro_f1: pred out of range");
    GAL_REQUIRE(truth[i] >= 0 && truth[i] < num_classes, "macro_f1: truth out of range");
    if (pred[i] == truth[i]) {
      ++tp[pred[i]];
    } else {
      ++fp[pred[i]];
      ++fn[truth[i]];
    }
  }
  double sum = 0.0;
  int counted = 0;
  for (int c = 0; c < num_classes; ++c) {
    const size_t denom = 2 * tp[c] + fp[c] + fn[c];
    if (denom == 0) continue;  // class absent from both pred and truth
    sum += 2.0 * static_cast<double>(tp[c]) / static_cast<double>(denom);
    ++counted;
  }
  GAL_REQUIRE(counted > 0, "macro_f1: every class excluded");
  return sum / counted;
}

}  // namespace gal
