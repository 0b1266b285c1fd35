#pragma once

// Simulation driver: runs one policy over a scenario, producing per-step
// records and aggregate summaries, and compares policies across seeds.
//
// Step order is fixed: sample query and network state, snapshot the context
// from the *current* knowledge stores, let the policy decide, realize the
// outcome, update the policy, then record the query at the origin store
// (possibly triggering knowledge distribution). A step therefore never sees
// chunks pushed by its own trigger.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edgegate/environment.hpp"
#include "edgegate/gate.hpp"
#include "edgegate/scenario.hpp"

namespace edgegate {

struct StepRecord {
  int step = 0;  // 1-based
  int edge_id = 0;
  Context context;
  int arm_index = 0;
  std::string arm_name;
  Phase phase = Phase::Warmup;
  Outcome outcome;
  int safe_set_size = 0;
  bool accuracy_violation = false;  // realized accuracy < QoS minimum
  bool delay_violation = false;     // realized delay  > QoS maximum
};

struct PhaseStats {
  int steps = 0;
  double total_cost = 0.0;
  double mean_cost = 0.0;
  double mean_accuracy = 0.0;
  double mean_delay_s = 0.0;
  double accuracy_violation_rate = 0.0;
  double delay_violation_rate = 0.0;
  double violation_rate = 0.0;  // either constraint violated
};

struct RunSummary {
  std::string policy;
  std::uint64_t seed = 0;
  int steps = 0;
  int warmup_steps = 0;
  std::vector<int> arm_counts;
  PhaseStats overall;
  PhaseStats warmup;
  PhaseStats exploit;
};

struct RunResult {
  std::vector<StepRecord> records;
  RunSummary summary;
};

// Routing policy interface. decide() may consume policy-private randomness;
// observe() is optional (only learning policies use it).
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Decision decide(const Context& c) = 0;
  virtual void observe(const Context& /*c*/, int /*arm_index*/,
                       const Outcome& /*o*/) {}
};

// Builds a policy from its spec string: "safeobo", "uniform", "oracle",
// or "always:<arm-name>". Throws std::invalid_argument on unknown specs.
std::unique_ptr<Policy> make_policy(const std::string& spec,
                                    const ScenarioConfig& cfg,
                                    const Environment& env,
                                    std::uint64_t seed);

RunResult run_scenario(const ScenarioConfig& cfg, const std::string& policy_spec,
                       std::uint64_t seed);

struct ComparisonRow {
  std::string policy;
  PhaseStats overall;
  PhaseStats warmup;
  PhaseStats exploit;
  double cost_reduction = 0.0;  // 1 - exploit_mean_cost / reference's
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  std::string reference_policy;
  std::vector<std::uint64_t> seeds;
};

// Runs every policy over every seed and averages the summaries per policy.
// reference_spec defaults to "always:<cfg.reference_arm>" when empty.
Comparison compare_policies(const ScenarioConfig& cfg,
                            const std::vector<std::string>& policy_specs,
                            const std::vector<std::uint64_t>& seeds,
                            std::string reference_spec = "");

}  // namespace edgegate
