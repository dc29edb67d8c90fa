#include "gal/data_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gal/rng.hpp"

namespace gal {

namespace {

using nlohmann::json;

constexpr int kCheckpointVersion = 1;
constexpr const char* kCheckpointFormat = "gal-policy-checkpoint";

std::string default_sbm_name(const SbmConfig& c) {
  std::ostringstream os;
  os << "sbm-n" << c.num_nodes << "-c" << c.num_classes << "-s" << c.seed;
  return os.str();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(DataCode::Malformed, "cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(DataCode::Malformed, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError(DataCode::Malformed, "cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw DataError(DataCode::Malformed, "write failed for " + path.string());
  }
}

}  // namespace

DenseMatrix sbm_class_centroids(const SbmConfig& config) {
  Rng rng(mix_seed(config.seed, 0x5b31 /* sbm stream */));
  const double scale = config.separation / std::sqrt(static_cast<double>(config.feat_dim));
  DenseMatrix centroids(config.num_classes, config.feat_dim);
  for (double& v : centroids.values()) v = scale * rng.normal();
  return centroids;
}

Graph generate_sbm(const SbmConfig& config) {
  GAL_REQUIRE(config.num_nodes > 0, "generate_sbm: need at least one node");
  GAL_REQUIRE(config.num_classes > 0 && config.num_classes <= config.num_nodes,
              "generate_sbm: invalid class count");
  GAL_REQUIRE(config.feat_dim > 0, "generate_sbm: feat_dim must be positive");
  GAL_REQUIRE(config.p_in >= 0.0 && config.p_in <= 1.0 && config.p_out >= 0.0 &&
                  config.p_out <= 1.0,
              "generate_sbm: edge probabilities must lie in [0,1]");
  GAL_REQUIRE(config.valid_frac >= 0.0 && config.test_frac >= 0.0 &&
                  config.valid_frac + config.test_frac < 1.0,
              "generate_sbm: split fractions must sum below 1");
  if (config.p_in == 0.0 && config.p_out == 0.0) {
    std::cerr << "warning: p_in = p_out = 0, generating an edgeless graph\n";
  }

  const int n = config.num_nodes;
  const int c = config.num_classes;
  Rng rng(mix_seed(config.seed, 0x5b31 /* sbm stream */));

  // Draw order is fixed: centroids, edges, feature noise, split shuffle.
  const double scale = config.separation / std::sqrt(static_cast<double>(config.feat_dim));
  DenseMatrix centroids(c, config.feat_dim);
  for (double& v : centroids.values()) v = scale * rng.normal();

  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = v % c;

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = labels[u] == labels[v] ? config.p_in : config.p_out;
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  }

  DenseMatrix features(n, config.feat_dim);
  for (int v = 0; v < n; ++v) {
    const double* mu = centroids.row(labels[v]);
    double* row = features.row(v);
    for (int j = 0; j < config.feat_dim; ++j) {
      row[j] = mu[j] + config.noise_sigma * rng.normal();
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_int(i + 1)]);
  }
  const int n_valid = static_cast<int>(config.valid_frac * n);
  const int n_test = static_cast<int>(config.test_frac * n);
  Split split;
  split.valid.assign(order.begin(), order.begin() + n_valid);
  split.test.assign(order.begin() + n_valid, order.begin() + n_valid + n_test);
  split.train.assign(order.begin() + n_valid + n_test, order.end());

  const std::string name = config.name.empty() ? default_sbm_name(config) : config.name;
  return Graph(name, c, std::move(features), std::move(labels), std::move(edges),
               std::move(split));
}

Graph load_graph(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  if (!doc.is_object()) {
    throw DataError(DataCode::Malformed, path.string() + ": top level must be an object");
  }
  for (const char* field :
       {"name", "num_nodes", "num_classes", "features", "labels", "edges", "splits"}) {
    if (!doc.contains(field)) {
      throw DataError(DataCode::Malformed,
                      path.string() + ": missing field '" + field + "'");
    }
  }
  try {
    const int num_nodes = doc.at("num_nodes").get<int>();
    const int num_classes = doc.at("num_classes").get<int>();

    const json& jfeat = doc.at("features");
    if (!jfeat.is_array() || static_cast<int>(jfeat.size()) != num_nodes) {
      throw DataError(DataCode::FeatureDim,
                      "features must be an array with one row per node");
    }
    const int dim = jfeat.empty() ? 0 : static_cast<int>(jfeat.at(0).size());
    DenseMatrix features(num_nodes, dim);
    for (int v = 0; v < num_nodes; ++v) {
      const json& row = jfeat.at(v);
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        std::ostringstream os;
        os << "features[" << v << "] has length " << row.size() << ", expected " << dim;
        throw DataError(DataCode::FeatureDim, os.str());
      }
      for (int j = 0; j < dim; ++j) {
        if (!row.at(j).is_number()) {
          std::ostringstream os;
          os << "features[" << v << "][" << j << "] is not a number";
          throw DataError(DataCode::Malformed, os.str());
        }
        features(v, j) = row.at(j).get<double>();
      }
    }

    auto labels = doc.at("labels").get<std::vector<int>>();

    std::vector<std::pair<int, int>> edges;
    const json& jedges = doc.at("edges");
    if (!jedges.is_array()) {
      throw DataError(DataCode::Malformed, "edges must be an array");
    }
    edges.reserve(jedges.size());
    for (size_t i = 0; i < jedges.size(); ++i) {
      const json& e = jedges.at(i);
      if (!e.is_array() || e.size() != 2) {
        std::ostringstream os;
        os << "edges[" << i << "] must be a pair [u,v]";
        throw DataError(DataCode::Malformed, os.str());
      }
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }

    const json& jsplits = doc.at("splits");
    Split split;
    split.train = jsplits.at("train").get<std::vector<int>>();
    split.valid = jsplits.at("valid").get<std::vector<int>>();
    split.test = jsplits.at("test").get<std::vector<int>>();

    return Graph(doc.at("name").get<std::string>(), num_classes, std::move(features),
                 std::move(labels), std::move(edges), std::move(split));
  } catch (const json::exception& e) {
    throw DataError(DataCode::Malformed, path.string() + ": " + e.what());
  }
}

void save_graph(const Graph& graph, const std::filesystem::path& path) {
  json doc;
  doc["name"] = graph.name();
  doc["num_nodes"] = graph.num_nodes();
  doc["num_classes"] = graph.num_classes();
  json jfeat = json::array();
  for (int v = 0; v < graph.num_nodes(); ++v) {
    json row = json::array();
    for (int j = 0; j < graph.feature_dim(); ++j) row.push_back(graph.features()(v, j));
    jfeat.push_back(std::move(row));
  }
  doc["features"] = std::move(jfeat);
  doc["labels"] = graph.labels();
  json jedges = json::array();
  for (const auto& [u, v] : graph.edges()) jedges.push_back(json::array({u, v}));
  doc["edges"] = std::move(jedges);
  doc["splits"] = json{{"train", graph.split().train},
                       {"valid", graph.split().valid},
                       {"test", graph.split().test}};
  write_text_file(path, doc.dump(1) + "\n");
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  json doc = serialize_policy(ckpt.policy);
  doc["format"] = kCheckpointFormat;
  doc["version"] = kCheckpointVersion;
  doc["training_graphs"] = ckpt.meta.training_graphs;
  doc["seed"] = ckpt.meta.seed;
  doc["episodes"] = ckpt.meta.episodes;
  write_text_file(path, doc.dump(1) + "\n");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  if (!doc.is_object() || doc.value("format", "") != kCheckpointFormat) {
    throw DataError(DataCode::Malformed,
                    path.string() + ": not a policy checkpoint file");
  }
  if (doc.value("version", -1) != kCheckpointVersion) {
    std::ostringstream os;
    os << path.string() << ": checkpoint version " << doc.value("version", -1)
       << ", expected " << kCheckpointVersion;
    throw DataError(DataCode::VersionMismatch, os.str());
  }
  Checkpoint ckpt;
  try {
    ckpt.policy = deserialize_policy(doc);
    ckpt.meta.training_graphs =
        doc.value("training_graphs", std::vector<std::string>{});
    ckpt.meta.seed = doc.value("seed", uint64_t{0});
    ckpt.meta.episodes = doc.value("episodes", 0);
  } catch (const json::exception& e) {
    throw DataError(DataCode::Malformed, path.string() + ": " + e.what());
  }
  return ckpt;
}

}  // namespace gal
