#include "gal/policy.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "gal/numerics.hpp"

namespace gal {

namespace {

DenseMatrix glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  DenseMatrix m(fan_in, fan_out);
  for (double& v : m.values()) v = rng.uniform(-bound, bound);
  return m;
}

// Scores -> masked softmax. Probability is exactly 0 off the candidate set.
CandidateDistribution masked_softmax(const DenseMatrix& scores,
                                     std::span<const int> candidates) {
  if (candidates.empty()) throw ContractViolation("budget exceeds pool");
  CandidateDistribution dist;
  dist.candidates.assign(candidates.begin(), candidates.end());
  std::sort(dist.candidates.begin(), dist.candidates.end());
  GAL_REQUIRE(dist.candidates.front() >= 0 && dist.candidates.back() < scores.rows(),
              "candidate node id out of range");
  dist.probs.assign(scores.rows(), 0.0);
  double mx = scores(dist.candidates.front(), 0);
  for (int v : dist.candidates) mx = std::max(mx, scores(v, 0));
  double sum = 0.0;
  for (int v : dist.candidates) {
    const double e = std::exp(scores(v, 0) - mx);
    dist.probs[v] = e;
    sum += e;
  }
  for (int v : dist.candidates) dist.probs[v] /= sum;
  return dist;
}

struct GcnPolicyActivations {
  DenseMatrix as;   // A_hat * S
  DenseMatrix z0;   // as * W0
  DenseMatrix h1;   // relu(z0)
  DenseMatrix ah1;  // A_hat * h1
  DenseMatrix z1;   // ah1 * W1
  DenseMatrix h2;   // relu(z1)
  DenseMatrix scores;  // h2 * head_w + b
};

GcnPolicyActivations gcn_policy_run(const PolicyParams& params,
                                    const NormalizedAdjacency& adj,
                                    const GraphState& state) {
  GAL_REQUIRE(state.matrix.cols() == params.w0.rows(),
              "policy_forward: state width must match W0");
  GcnPolicyActivations act;
  act.as = spmm(adj.matrix, state.matrix);
  act.z0 = matmul(act.as, params.w0);
  act.h1 = relu(act.z0);
  act.ah1 = spmm(adj.matrix, act.h1);
  act.z1 = matmul(act.ah1, params.w1);
  act.h2 = relu(act.z1);
  act.scores = matmul(act.h2, params.head_w);
  const double b = params.bias();
  for (double& v : act.scores.values()) v += b;
  return act;
}

struct MlpPolicyActivations {
  DenseMatrix z1, h1, z2, h2, scores;
};

MlpPolicyActivations mlp_policy_run(const MlpPolicyParams& params,
                                    const GraphState& state) {
  GAL_REQUIRE(state.matrix.cols() == params.w1.rows(),
              "mlp_forward: state width must match W1");
  MlpPolicyActivations act;
  act.z1 = matmul(state.matrix, params.w1);
  for (int r = 0; r < act.z1.rows(); ++r) {
    for (int c = 0; c < act.z1.cols(); ++c) act.z1(r, c) += params.b1(0, c);
  }
  act.h1 = relu(act.z1);
  act.z2 = matmul(act.h1, params.w2);
  for (int r = 0; r < act.z2.rows(); ++r) {
    for (int c = 0; c < act.z2.cols(); ++c) act.z2(r, c) += params.b2(0, c);
  }
  act.h2 = relu(act.z2);
  act.scores = matmul(act.h2, params.w3);
  for (double& v : act.scores.values()) v += params.b3(0, 0);
  return act;
}

// d ln p(chosen) / d score_v = [v == chosen] - p_v on candidates, 0 elsewhere.
DenseMatrix logprob_score_grad(const CandidateDistribution& dist, int chosen) {
  DenseMatrix d(static_cast<int>(dist.probs.size()), 1);
  for (int v : dist.candidates) d(v, 0) = -dist.probs[v];
  d(chosen, 0) += 1.0;
  return d;
}

void require_chosen(const CandidateDistribution& dist, int chosen) {
  const bool member = std::binary_search(dist.candidates.begin(),
                                         dist.candidates.end(), chosen);
  GAL_REQUIRE(member, "logprob_grad: chosen node is not a candidate");
}

}  // namespace

PolicyParams init_policy(uint64_t seed) {
  Rng rng(mix_seed(seed, 0x7011c7 /* policy init stream */));
  PolicyParams p;
  p.w0 = glorot_uniform(5, kPolicyHidden, rng);
  p.w1 = glorot_uniform(kPolicyHidden, kPolicyHidden, rng);
  p.head_w = glorot_uniform(kPolicyHidden, 1, rng);
  p.head_b = DenseMatrix(1, 1);
  return p;
}

MlpPolicyParams init_mlp_policy(uint64_t seed) {
  Rng rng(mix_seed(seed, 0x7011c8 /* mlp policy init stream */));
  MlpPolicyParams p;
  p.w1 = glorot_uniform(5, kPolicyHidden, rng);
  p.w2 = glorot_uniform(kPolicyHidden, kPolicyHidden, rng);
  p.w3 = glorot_uniform(kPolicyHidden, 1, rng);
  p.b1 = DenseMatrix(1, kPolicyHidden);
  p.b2 = DenseMatrix(1, kPolicyHidden);
  p.b3 = DenseMatrix(1, 1);
  return p;
}

CandidateDistribution policy_forward(const PolicyParams& params,
                                     const NormalizedAdjacency& adj,
                                     const GraphState& state,
                                     std::span<const int> candidates) {
  return masked_softmax(gcn_policy_run(params, adj, state).scores, candidates);
}

CandidateDistribution mlp_forward(const MlpPolicyParams& params, const GraphState& state,
                                  std::span<const int> candidates) {
  return masked_softmax(mlp_policy_run(params, state).scores, candidates);
}

int select_sample(const CandidateDistribution& dist, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int v : dist.candidates) {
    acc += dist.probs[v];
    if (u < acc) return v;
  }
  return dist.candidates.back();
}

int select_argmax(const CandidateDistribution& dist) {
  int best = dist.candidates.front();
  for (int v : dist.candidates) {
    if (dist.probs[v] > dist.probs[best]) best = v;
  }
  return best;
}

PolicyLogProbGrad logprob_grad(const PolicyParams& params, const NormalizedAdjacency& adj,
                               const GraphState& state, std::span<const int> candidates,
                               int chosen) {
  const GcnPolicyActivations act = gcn_policy_run(params, adj, state);
  const CandidateDistribution dist = masked_softmax(act.scores, candidates);
  require_chosen(dist, chosen);

  PolicyLogProbGrad out;
  out.logprob = std::log(dist.probs[chosen]);

  const DenseMatrix d_score = logprob_score_grad(dist, chosen);
  out.grads.head_w = matmul_at_b(act.h2, d_score);
  double db = 0.0;
  for (double v : d_score.values()) db += v;
  out.grads.head_b = DenseMatrix(1, 1, {db});

  const DenseMatrix dh2 = matmul_a_bt(d_score, params.head_w);
  const DenseMatrix dz1 = relu_backward(act.z1, dh2);
  out.grads.w1 = matmul_at_b(act.ah1, dz1);
  // A_hat is symmetric; spmm with the same matrix is the transpose product.
  const DenseMatrix dh1 = spmm(adj.matrix, matmul_a_bt(dz1, params.w1));
  const DenseMatrix dz0 = relu_backward(act.z0, dh1);
  out.grads.w0 = matmul_at_b(act.as, dz0);
  return out;
}

MlpLogProbGrad mlp_logprob_grad(const MlpPolicyParams& params, const GraphState& state,
                                std::span<const int> candidates, int chosen) {
  const MlpPolicyActivations act = mlp_policy_run(params, state);
  const CandidateDistribution dist = masked_softmax(act.scores, candidates);
  require_chosen(dist, chosen);

  MlpLogProbGrad out;
  out.logprob = std::log(dist.probs[chosen]);

  const DenseMatrix d_score = logprob_score_grad(dist, chosen);
  out.grads.w3 = matmul_at_b(act.h2, d_score);
  double db3 = 0.0;
  for (double v : d_score.values()) db3 += v;
  out.grads.b3 = DenseMatrix(1, 1, {db3});

  const DenseMatrix dh2 = matmul_a_bt(d_score, params.w3);
  const DenseMatrix dz2 = relu_backward(act.z2, dh2);
  out.grads.w2 = matmul_at_b(act.h1, dz2);
  out.grads.b2 = DenseMatrix(1, kPolicyHidden);
  for (int r = 0; r < dz2.rows(); ++r) {
    for (int c = 0; c < dz2.cols(); ++c) out.grads.b2(0, c) += dz2(r, c);
  }

  const DenseMatrix dh1 = matmul_a_bt(dz2, params.w2);
  const DenseMatrix dz1 = relu_backward(act.z1, dh1);
  out.grads.w1 = matmul_at_b(state.matrix, dz1);
  out.grads.b1 = DenseMatrix(1, kPolicyHidden);
  for (int r = 0; r < dz1.rows(); ++r) {
    for (int c = 0; c < dz1.cols(); ++c) out.grads.b1(0, c) += dz1(r, c);
  }
  return out;
}

const char* policy_arch_name(PolicyArch arch) {
  return arch == PolicyArch::Gcn ? "gcn" : "mlp";
}

PolicyArch parse_policy_arch(const std::string& name) {
  if (name == "gcn") return PolicyArch::Gcn;
  if (name == "mlp") return PolicyArch::Mlp;
  throw DataError(DataCode::ArchMismatch, "unknown policy architecture '" + name + "'");
}

std::vector<DenseMatrix*> Policy::param_list() {
  if (arch == PolicyArch::Gcn) {
    return {&gcn.w0, &gcn.w1, &gcn.head_w, &gcn.head_b};
  }
  return {&mlp.w1, &mlp.b1, &mlp.w2, &mlp.b2, &mlp.w3, &mlp.b3};
}

std::vector<const DenseMatrix*> Policy::param_list() const {
  if (arch == PolicyArch::Gcn) {
    return {&gcn.w0, &gcn.w1, &gcn.head_w, &gcn.head_b};
  }
  return {&mlp.w1, &mlp.b1, &mlp.w2, &mlp.b2, &mlp.w3, &mlp.b3};
}

CandidateDistribution policy_distribution(const Policy& policy,
                                          const NormalizedAdjacency& adj,
                                          const GraphState& state,
                                          std::span<const int> candidates) {
  if (policy.arch == PolicyArch::Gcn) {
    return policy_forward(policy.gcn, adj, state, candidates);
  }
  return mlp_forward(policy.mlp, state, candidates);
}

namespace {

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"values", m.values()}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("values")) {
    throw DataError(DataCode::Malformed, "matrix entry must have rows/cols/values");
  }
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  auto values = j.at("values").get<std::vector<double>>();
  if (static_cast<size_t>(rows) * cols != values.size()) {
    throw DataError(DataCode::Malformed, "matrix value count does not match shape");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DataError(DataCode::Malformed, "matrix contains non-finite value");
    }
  }
  return DenseMatrix(rows, cols, std::move(values));
}

}  // namespace

nlohmann::json serialize_policy(const Policy& policy) {
  nlohmann::json weights;
  if (policy.arch == PolicyArch::Gcn) {
    weights["w0"] = matrix_to_json(policy.gcn.w0);
    weights["w1"] = matrix_to_json(policy.gcn.w1);
    weights["head_w"] = matrix_to_json(policy.gcn.head_w);
    weights["head_b"] = matrix_to_json(policy.gcn.head_b);
  } else {
    weights["w1"] = matrix_to_json(policy.mlp.w1);
    weights["b1"] = matrix_to_json(policy.mlp.b1);
    weights["w2"] = matrix_to_json(policy.mlp.w2);
    weights["b2"] = matrix_to_json(policy.mlp.b2);
    weights["w3"] = matrix_to_json(policy.mlp.w3);
    weights["b3"] = matrix_to_json(policy.mlp.b3);
  }
  return nlohmann::json{
      {"architecture", policy_arch_name(policy.arch)},
      {"alpha", policy.alpha},
      {"feature_mask", policy.mask.keep},
      {"weights", std::move(weights)},
  };
}

Policy deserialize_policy(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("architecture") || !doc.contains("weights")) {
    throw DataError(DataCode::Malformed, "policy document missing required fields");
  }
  Policy policy;
  policy.arch = parse_policy_arch(doc.at("architecture").get<std::string>());
  policy.alpha = doc.value("alpha", 20.0);
  if (doc.contains("feature_mask")) {
    const auto mask = doc.at("feature_mask").get<std::vector<bool>>();
    if (mask.size() != 5) {
      throw DataError(DataCode::Malformed, "feature_mask must have 5 entries");
    }
    for (size_t i = 0; i < 5; ++i) policy.mask.keep[i] = mask[i];
  }
  const nlohmann::json& w = doc.at("weights");
  try {
    if (policy.arch == PolicyArch::Gcn) {
      policy.gcn.w0 = matrix_from_json(w.at("w0"));
      policy.gcn.w1 = matrix_from_json(w.at("w1"));
      policy.gcn.head_w = matrix_from_json(w.at("head_w"));
      policy.gcn.head_b = matrix_from_json(w.at("head_b"));
    } else {
      policy.mlp.w1 = matrix_from_json(w.at("w1"));
      policy.mlp.b1 = matrix_from_json(w.at("b1"));
      policy.mlp.w2 = matrix_from_json(w.at("w2"));
      policy.mlp.b2 = matrix_from_json(w.at("b2"));
      policy.mlp.w3 = matrix_from_json(w.at("w3"));
      policy.mlp.b3 = matrix_from_json(w.at("b3"));
    }
  } catch (const nlohmann::json::out_of_range&) {
    throw DataError(DataCode::Malformed, "policy weights missing a required matrix");
  }
  return policy;
}

}  // namespace gal
