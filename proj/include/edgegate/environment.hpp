#pragma once

// Synthetic query workload and outcome realization. All sampling is keyed by
// (seed, stream, step, edge[, arm]) so that a decision made by one policy
// never perturbs the draws seen by another: identical seeds yield identical
// queries, network conditions, and per-arm outcome noise across policies.

#include <cstdint>
#include <vector>

#include "edgegate/cost_model.hpp"
#include "edgegate/knowledge.hpp"
#include "edgegate/rng.hpp"
#include "edgegate/scenario.hpp"
#include "edgegate/types.hpp"

namespace edgegate {

// Sub-stream tags for deterministic seed derivation.
enum StreamTag : std::uint64_t {
  kStreamQuery = 1,
  kStreamNetwork = 2,
  kStreamOutcome = 3,
  kStreamGateWarmup = 4,
  kStreamUniformPolicy = 5,
};

struct Query {
  int topic = 0;
  std::vector<std::uint32_t> keywords;
  bool multi_hop = false;
  int query_len_tokens = 0;
  int entity_count = 0;
};

struct NetworkSample {
  double cloud_delay_s = 0.0;
  std::vector<double> edge_delay_s;
};

// Mean of max(0, X) for X ~ Normal(mean, stddev); used by the oracle policy.
double clamped_normal_mean(const Dist& d);

class Environment {
 public:
  explicit Environment(const ScenarioConfig& cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<Community>& communities() const { return communities_; }

  // Topic popularity for one edge at one step, after drift.
  std::vector<double> popularity_row(int step, int edge) const;

  Query next_query(std::uint64_t seed, int step, int edge) const;
  NetworkSample sample_network(std::uint64_t seed, int step) const;

  // Assembles the decision context from the query, the sampled network
  // state, and the current knowledge stores (before any update this step).
  Context make_context(const Query& q, const NetworkSample& net,
                       const std::vector<EdgeStore>& stores) const;

  // Draws the realized outcome of routing this context through one arm.
  // Draw order (fixed for reproducibility): correctness, delay, tokens.
  Outcome realize(const Context& c, int arm_index, std::uint64_t seed,
                  int step, int edge) const;

  // Expected values under the true scenario parameters (oracle's view).
  double success_probability(const Context& c, int arm_index) const;
  double expected_delay(const Context& c, int arm_index) const;
  double expected_total_cost(const Context& c, int arm_index) const;

 private:
  double link_delay(const Context& c, const Action& a) const;

  ScenarioConfig cfg_;
  std::vector<Community> communities_;
};

}  // namespace edgegate
