#pragma once

// Scenario configuration: everything a run needs, loadable from JSON.
// load_and_validate collects *all* schema violations before failing so a
// bad file is diagnosed in one pass.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgegate/cost_model.hpp"
#include "edgegate/rng.hpp"
#include "edgegate/types.hpp"

namespace edgegate {

struct KernelSpec {
  double signal_variance = 1.0;
  std::vector<double> length_scales;  // broadcast from scalar or per-dim
  double noise_variance = 0.1;
  double jitter = 1e-8;
};

struct ArmResponseProfile {
  double base_accuracy = 0.5;
  double overlap_slope = 0.0;      // only edge-retrieval arms benefit
  double multihop_penalty = 0.0;
  Dist delay;                      // seconds, before network link delay
  Dist tokens_in;
  Dist tokens_out;
};

struct ArmSpec {
  std::string name;
  Action action;
  ArmCostProfile cost;
  ArmResponseProfile response;
};

struct QoSSpec {
  double min_accuracy = 0.8;
  double max_delay_s = 5.0;
};

struct GateSpec {
  double beta_safe = 2.0;
  double beta_acq = 2.0;
  int warmup_steps = 300;
  int window = 512;
  std::vector<std::string> safe_seed_arms;
  double query_len_norm = 32.0;
  double entity_count_norm = 8.0;
  KernelSpec cost_kernel;
  KernelSpec accuracy_kernel;
  KernelSpec delay_kernel;
};

struct TopicSpec {
  std::vector<std::uint32_t> keywords;
};

struct DriftSegment {
  int from_step = 0;
  std::vector<std::vector<double>> popularity;  // per edge, per topic
};

struct DriftSpec {
  enum class Kind { None, Piecewise, Sinusoidal };
  Kind kind = Kind::None;
  std::vector<DriftSegment> segments;               // piecewise
  std::vector<std::vector<double>> alt_popularity;  // sinusoidal blend target
  int period_steps = 1000;
};

struct NetworkSpec {
  Dist cloud_link;               // cloud round-trip delay, seconds
  std::vector<Dist> edge_links;  // per target edge, origin-independent
};

struct WorkloadSpec {
  std::vector<TopicSpec> topics;
  std::vector<std::vector<double>> popularity;  // per edge, per topic
  DriftSpec drift;
  double multihop_rate = 0.1;
  int keywords_per_query = 3;
  Dist query_len;     // tokens
  Dist entity_count;
  NetworkSpec network;
};

struct CommunitySpec {
  std::uint32_t id = 0;
  int topic = 0;            // index into workload.topics
  int n_chunks = 0;
  int keywords_per_chunk = 2;
};

struct KnowledgeSpec {
  int edge_count = 3;
  int capacity = 1000;
  int trigger_threshold = 20;
  int top_k = 3;
  int push_limit = 500;
  bool per_edge_trigger = true;
  std::vector<std::vector<std::uint32_t>> synonym_classes;
  std::vector<CommunitySpec> communities;
};

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  int steps = 1000;
  std::vector<ArmSpec> arms;
  std::string reference_arm;  // cost-reduction baseline in comparisons
  GateSpec gate;
  QoSSpec qos;
  CostWeights weights;
  WorkloadSpec workload;
  KnowledgeSpec knowledge;

  int arm_index(const std::string& name) const;
  int feature_dim() const { return 6 + static_cast<int>(arms.size()); }
};

// Thrown by load_and_validate with every violation found, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_and_validate(const std::string& path);
std::string scenario_to_json_text(const ScenarioConfig& cfg);

// Validates a fully constructed config (also used after CLI overrides);
// returns the list of violations, empty when valid.
std::vector<std::string> validate(const ScenarioConfig& cfg);

}  // namespace edgegate
