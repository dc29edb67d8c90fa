#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gal/matrix.hpp"

namespace gal {

// Smoothing constant for all log/entropy/KL computations.
inline constexpr double kLogEps = 1e-12;

DenseMatrix relu(const DenseMatrix& m);
// Passes upstream gradient where input > 0; gradient at exactly 0 is 0.
DenseMatrix relu_backward(const DenseMatrix& input, const DenseMatrix& upstream);

void relu_into(const DenseMatrix& m, DenseMatrix& out);
void relu_backward_into(const DenseMatrix& input, const DenseMatrix& upstream, DenseMatrix& out);

// Per-row softmax with max-subtraction.
DenseMatrix row_softmax(const DenseMatrix& m);
void row_softmax_into(const DenseMatrix& m, DenseMatrix& out);

struct CrossEntropyResult {
  double loss = 0.0;
  DenseMatrix logit_grad;  // gradient w.r.t. pre-softmax logits
};

// Mean over `subset` of -ln(probs[v, labels[v]] + eps). labels is indexed by
// node id. The gradient is (probs - onehot)/|subset| on subset rows, zero
// elsewhere.
CrossEntropyResult cross_entropy(const DenseMatrix& probs, std::span<const int> labels,
                                 std::span<const int> subset);

struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
  int64_t t = 0;
  std::vector<DenseMatrix> m;
  std::vector<DenseMatrix> v;
};

AdamState make_adam(std::span<const DenseMatrix* const> params, double lr,
                    double weight_decay);

// Standard Adam with bias correction. Weight decay is added to the gradient
// (g <- g + wd*theta) before the moment updates.
void adam_step(std::span<DenseMatrix* const> params,
               std::span<const DenseMatrix* const> grads, AdamState& state);

// Central-difference gradient check. Perturbs every coordinate of every
// parameter by +/-h, recomputes `loss_fn`, and compares against the supplied
// analytic gradient. Returns the max over coordinates of
// |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
double finite_diff_check(const std::function<double()>& loss_fn,
                         std::span<DenseMatrix* const> params,
                         std::span<const DenseMatrix* const> analytic_grads,
                         double h);

}  // namespace gal
