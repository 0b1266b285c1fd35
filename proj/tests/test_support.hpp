#pragma once

// Small hand-built scenario used across the unit suites: 2 edges, 4 topics,
// and the standard four routing arms with round numbers everywhere.

#include "edgegate/scenario.hpp"

namespace edgegate::testing {

inline ScenarioConfig make_toy_scenario() {
  ScenarioConfig cfg;
  cfg.name = "toy";
  cfg.seed = 1;
  cfg.steps = 200;
  cfg.reference_arm = "cloud-llm";

  auto arm = [](const std::string& name, RetrievalSource r, GenerationSite g) {
    ArmSpec a;
    a.name = name;
    a.action = {r, g};
    a.cost.model_params = 3e9;
    a.cost.gpu_rate_tflops = 1.29;
    a.cost.calibration = 1.0;
    a.response.tokens_in = {100.0, 10.0};
    a.response.tokens_out = {30.0, 5.0};
    a.response.delay = {0.3, 0.05};
    a.response.base_accuracy = 0.5;
    return a;
  };
  ArmSpec slm = arm("slm", RetrievalSource::None, GenerationSite::Local);
  slm.response.base_accuracy = 0.3;
  ArmSpec edge = arm("edge-rag", RetrievalSource::Edge, GenerationSite::Local);
  edge.response.base_accuracy = 0.35;
  edge.response.overlap_slope = 0.6;
  edge.response.multihop_penalty = 0.25;
  edge.response.tokens_in = {1000.0, 50.0};
  ArmSpec graph =
      arm("cloud-graph", RetrievalSource::CloudGraph, GenerationSite::Local);
  graph.response.base_accuracy = 0.75;
  graph.response.delay = {1.0, 0.2};
  graph.response.tokens_in = {2000.0, 100.0};
  ArmSpec llm =
      arm("cloud-llm", RetrievalSource::CloudGraph, GenerationSite::Cloud);
  llm.cost.model_params = 72e9;
  llm.cost.gpu_rate_tflops = 60.0;
  llm.response.base_accuracy = 0.95;
  llm.response.delay = {0.6, 0.1};
  llm.response.tokens_in = {2000.0, 100.0};
  cfg.arms = {slm, edge, graph, llm};

  cfg.gate.warmup_steps = 40;
  cfg.gate.window = 64;
  cfg.gate.safe_seed_arms = {"cloud-llm"};
  cfg.gate.cost_kernel.length_scales = {2.0};
  cfg.gate.cost_kernel.noise_variance = 0.2;
  cfg.gate.accuracy_kernel.length_scales = {1.0};
  cfg.gate.accuracy_kernel.noise_variance = 0.5;
  cfg.gate.delay_kernel.length_scales = {1.0};
  cfg.gate.delay_kernel.noise_variance = 0.1;

  cfg.qos.min_accuracy = 0.7;
  cfg.qos.max_delay_s = 5.0;

  cfg.workload.topics.resize(4);
  for (int t = 0; t < 4; ++t)
    for (int k = 0; k < 4; ++k)
      cfg.workload.topics[t].keywords.push_back(
          static_cast<std::uint32_t>(4 * t + k));
  cfg.workload.popularity = {{0.4, 0.4, 0.1, 0.1}, {0.1, 0.1, 0.4, 0.4}};
  cfg.workload.multihop_rate = 0.1;
  cfg.workload.keywords_per_query = 2;
  cfg.workload.query_len = {18.0, 6.0};
  cfg.workload.entity_count = {3.0, 1.5};
  cfg.workload.network.cloud_link = {0.25, 0.05};
  cfg.workload.network.edge_links = {{0.03, 0.01}, {0.05, 0.01}};

  cfg.knowledge.edge_count = 2;
  cfg.knowledge.capacity = 40;
  cfg.knowledge.trigger_threshold = 5;
  cfg.knowledge.top_k = 2;
  cfg.knowledge.push_limit = 20;
  for (int t = 0; t < 4; ++t) {
    CommunitySpec cs;
    cs.id = static_cast<std::uint32_t>(t + 1);
    cs.topic = t;
    cs.n_chunks = 8;
    cs.keywords_per_chunk = 2;
    cfg.knowledge.communities.push_back(cs);
  }
  return cfg;
}

}  // namespace edgegate::testing
