#include "gal/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gal {

void relu_into(const DenseMatrix& m, DenseMatrix& out) {
  if (!out.same_shape(m)) out = DenseMatrix(m.rows(), m.cols());
  const double* in = m.values().data();
  double* o = out.values().data();
  const size_t n = m.size();
  for (size_t i = 0; i < n; ++i) o[i] = in[i] > 0.0 ? in[i] : 0.0;
}

DenseMatrix relu(const DenseMatrix& m) {
  DenseMatrix out;
  relu_into(m, out);
  return out;
}

void relu_backward_into(const DenseMatrix& input, const DenseMatrix& upstream,
                        DenseMatrix& out) {
  GAL_REQUIRE(input.same_shape(upstream), "relu_backward: shape mismatch");
  if (!out.same_shape(input)) out = DenseMatrix(input.rows(), input.cols());
  const double* in = input.values().data();
  const double* up = upstream.values().data();
  double* o = out.values().data();
  const size_t n = input.size();
  for (size_t i = 0; i < n; ++i) o[i] = in[i] > 0.0 ? up[i] : 0.0;
}

DenseMatrix relu_backward(const DenseMatrix& input, const DenseMatrix& upstream) {
  DenseMatrix out;
  relu_backward_into(input, upstream, out);
  return out;
}

void row_softmax_into(const DenseMatrix& m, DenseMatrix& out) {
  if (!out.same_shape(m)) out = DenseMatrix(m.rows(), m.cols());
  const int cols = m.cols();
  for (int r = 0; r < m.rows(); ++r) {
    const double* in = m.row(r);
    double* o = out.row(r);
    double mx = in[0];
    for (int c = 1; c < cols; ++c) mx = std::max(mx, in[c]);
    double sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      o[c] = std::exp(in[c] - mx);
      sum += o[c];
    }
    for (int c = 0; c < cols; ++c) o[c] /= sum;
  }
}

DenseMatrix row_softmax(const DenseMatrix& m) {
  DenseMatrix out;
  row_softmax_into(m, out);
  return out;
}

CrossEntropyResult cross_entropy(const DenseMatrix& probs, std::span<const int> labels,
                                 std::span<const int> subset) {
  if (subset.empty()) throw ContractViolation("no labeled nodes");
  GAL_REQUIRE(labels.size() >= static_cast<size_t>(probs.rows()),
              "cross_entropy: labels must cover all rows");
  CrossEntropyResult res;
  res.logit_grad = DenseMatrix(probs.rows(), probs.cols());
  const double inv = 1.0 / static_cast<double>(subset.size());
  for (int v : subset) {
    GAL_REQUIRE(v >= 0 && v < probs.rows(), "cross_entropy: subset node out of range");
    const int y = labels[v];
    GAL_REQUIRE(y >= 0 && y < probs.cols(), "cross_entropy: label out of range");
    res.loss -= std::log(probs(v, y) + kLogEps);
    const double* p = probs.row(v);
    double* g = res.logit_grad.row(v);
    for (int c = 0; c < probs.cols(); ++c) g[c] = p[c] * inv;
    g[y] -= inv;
  }
  res.loss *= inv;
  return res;
}

AdamState make_adam(std::span<const DenseMatrix* const> params, double lr,
                    double weight_decay) {
  AdamState state;
  state.lr = lr;
  state.weight_decay = weight_decay;
  state.m.reserve(params.size());
  state.v.reserve(params.size());
  for (const DenseMatrix* p : params) {
    state.m.emplace_back(p->rows(), p->cols());
    state.v.emplace_back(p->rows(), p->cols());
  }
  return state;
}

void adam_step(std::span<DenseMatrix* const> params,
               std::span<const DenseMatrix* const> grads, AdamState& state) {
  GAL_REQUIRE(params.size() == grads.size() && params.size() == state.m.size(),
              "adam_step: parameter/gradient/state count mismatch");
  state.t += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < params.size(); ++i) {
    DenseMatrix& p = *params[i];
    const DenseMatrix& g = *grads[i];
    GAL_REQUIRE(p.same_shape(g), "adam_step: gradient shape mismatch");
    double* pv = p.values().data();
    const double* gv = g.values().data();
    double* mv = state.m[i].values().data();
    double* vv = state.v[i].values().data();
    const size_t n = p.size();
    for (size_t j = 0; j < n; ++j) {
      const double grad = gv[j] + state.weight_decay * pv[j];
      mv[j] = state.beta1 * mv[j] + (1.0 - state.beta1) * grad;
      vv[j] = state.beta2 * vv[j] + (1.0 - state.beta2) * grad * grad;
      const double m_hat = mv[j] / bc1;
      const double v_hat = vv[j] / bc2;
      pv[j] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  }
}

double finite_diff_check(const std::function<double()>& loss_fn,
                         std::span<DenseMatrix* const> params,
                         std::span<const DenseMatrix* const> analytic_grads,
                         double h) {
  GAL_REQUIRE(params.size() == analytic_grads.size(),
              "finite_diff_check: parameter/gradient count mismatch");
  double max_err = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    DenseMatrix& p = *params[i];
    const DenseMatrix& a = *analytic_grads[i];
    GAL_REQUIRE(p.same_shape(a), "finite_diff_check: gradient shape mismatch");
    for (size_t j = 0; j < p.size(); ++j) {
      const double saved = p.values()[j];
      p.values()[j] = saved + h;
      const double up = loss_fn();
      p.values()[j] = saved - h;
      const double down = loss_fn();
      p.values()[j] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = a.values()[j];
      const double denom = std::max(1e-8, std::abs(analytic) + std::abs(numeric));
      max_err = std::max(max_err, std::abs(analytic - numeric) / denom);
    }
  }
  return max_err;
}

}  // namespace gal
