#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gal/rng.hpp"
#include "gal/state.hpp"

namespace gal {

inline constexpr int kPolicyHidden = 8;

// 2-layer GCN over the 5-column state plus a scalar linear head. The GCN
// layers carry no bias; the head does. Shapes are independent of node count,
// so one parameter set runs on any graph.
struct PolicyParams {
  DenseMatrix w0{5, kPolicyHidden};
  DenseMatrix w1{kPolicyHidden, kPolicyHidden};
  DenseMatrix head_w{kPolicyHidden, 1};
  DenseMatrix head_b{1, 1};

  double bias() const { return head_b(0, 0); }
  bool operator==(const PolicyParams&) const = default;
};

// Node-wise 3-layer MLP (5 -> 8 -> 8 -> 1, biases everywhere); the
// structure-blind ablation counterpart of the GCN policy.
struct MlpPolicyParams {
  DenseMatrix w1{5, kPolicyHidden};
  DenseMatrix b1{1, kPolicyHidden};
  DenseMatrix w2{kPolicyHidden, kPolicyHidden};
  DenseMatrix b2{1, kPolicyHidden};
  DenseMatrix w3{kPolicyHidden, 1};
  DenseMatrix b3{1, 1};

  bool operator==(const MlpPolicyParams&) const = default;
};

PolicyParams init_policy(uint64_t seed);
MlpPolicyParams init_mlp_policy(uint64_t seed);

// Probabilities over the candidate pool; non-candidates hold exactly 0.
struct CandidateDistribution {
  std::vector<int> candidates;  // ascending node ids
  std::vector<double> probs;    // length num_nodes, zero off-candidates
};

// Masked softmax over per-node scalar scores from the GCN policy.
CandidateDistribution policy_forward(const PolicyParams& params,
                                     const NormalizedAdjacency& adj,
                                     const GraphState& state,
                                     std::span<const int> candidates);

CandidateDistribution mlp_forward(const MlpPolicyParams& params, const GraphState& state,
                                  std::span<const int> candidates);

// Categorical sample via inverse CDF over candidates in ascending node-id
// order.
int select_sample(const CandidateDistribution& dist, Rng& rng);

// Maximal-probability candidate; ties broken by lowest node id.
int select_argmax(const CandidateDistribution& dist);

struct PolicyLogProbGrad {
  double logprob = 0.0;
  PolicyParams grads;  // same shapes as the parameters
};

struct MlpLogProbGrad {
  double logprob = 0.0;
  MlpPolicyParams grads;
};

// Analytic gradient of ln p(chosen) w.r.t. all policy parameters.
PolicyLogProbGrad logprob_grad(const PolicyParams& params, const NormalizedAdjacency& adj,
                               const GraphState& state, std::span<const int> candidates,
                               int chosen);

MlpLogProbGrad mlp_logprob_grad(const MlpPolicyParams& params, const GraphState& state,
                                std::span<const int> candidates, int chosen);

enum class PolicyArch { Gcn, Mlp };

const char* policy_arch_name(PolicyArch arch);
PolicyArch parse_policy_arch(const std::string& name);

// A policy network plus everything needed to rebuild its input state on any
// graph. This is the unit that checkpoints carry.
struct Policy {
  PolicyArch arch = PolicyArch::Gcn;
  PolicyParams gcn;
  MlpPolicyParams mlp;
  double alpha = 20.0;
  FeatureMask mask;

  std::vector<DenseMatrix*> param_list();
  std::vector<const DenseMatrix*> param_list() const;
};

CandidateDistribution policy_distribution(const Policy& policy,
                                          const NormalizedAdjacency& adj,
                                          const GraphState& state,
                                          std::span<const int> candidates);

// Portable JSON encoding of the parameters (weights plus architecture tag,
// alpha, and feature mask). Round-trips bit-exactly.
nlohmann::json serialize_policy(const Policy& policy);
Policy deserialize_policy(const nlohmann::json& doc);

}  // namespace gal
