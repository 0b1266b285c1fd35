#pragma once

// The collaborative gate: a safe Bayesian-optimization bandit that routes
// each query to one arm. During warm-up it explores uniformly at random;
// afterwards it restricts itself to the safe set (arms whose accuracy lower
// confidence bound and delay upper confidence bound satisfy the QoS limits,
// plus the always-allowed seed arms) and picks the arm minimizing the cost
// lower confidence bound. Three independent GPs model cost, accuracy, and
// delay over a shared context-plus-arm feature vector.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "edgegate/cost_model.hpp"
#include "edgegate/gp.hpp"
#include "edgegate/rng.hpp"
#include "edgegate/scenario.hpp"
#include "edgegate/types.hpp"

namespace edgegate {

enum class Phase { Warmup, Exploit };

inline const char* to_string(Phase p) {
  return p == Phase::Warmup ? "warmup" : "exploit";
}

// Per-arm confidence intervals used by the safe-set rule.
struct ArmBounds {
  double accuracy_mean = 0.0;
  double accuracy_stddev = 0.0;
  double delay_mean = 0.0;
  double delay_stddev = 0.0;
};

// Pure safe-set rule: arm i is safe when
//   accuracy_mean - beta * accuracy_stddev >= qos.min_accuracy  and
//   delay_mean  + beta * delay_stddev    <= qos.max_delay_s,
// and seed arms are safe unconditionally. Returns ascending indices.
std::vector<int> safe_set_from_bounds(const std::vector<ArmBounds>& bounds,
                                      const std::vector<int>& seed_arms,
                                      double beta, const QoSSpec& qos);

struct Decision {
  int arm_index = 0;
  Phase phase = Phase::Warmup;
  int safe_set_size = 0;
};

class CollaborativeGate {
 public:
  CollaborativeGate(const ScenarioConfig& cfg, std::uint64_t seed);

  // Feature vector: [cloud_delay_s, best_edge_delay_s, best_overlap_ratio,
  // multi_hop, query_len/query_len_norm, entity_count/entity_count_norm]
  // followed by a one-hot arm encoding.
  Eigen::VectorXd featurize(const Context& c, int arm_index) const;

  std::vector<ArmBounds> arm_bounds(const Context& c) const;
  std::vector<int> safe_set(const Context& c) const;

  // Picks the arm for this step and advances the step counter.
  Decision decide(const Context& c);

  // Feeds the realized outcome into the three GPs. Validates before
  // mutating: on invalid input no model state changes.
  void update(const Context& c, int arm_index, const Outcome& o);

  int steps_seen() const { return step_; }
  bool in_warmup() const { return step_ < warmup_steps_; }
  const GpModel& cost_model() const { return gp_cost_; }
  const GpModel& accuracy_model() const { return gp_accuracy_; }
  const GpModel& delay_model() const { return gp_delay_; }
  const std::vector<int>& seed_arms() const { return seed_arms_; }

 private:
  int n_arms_;
  QoSSpec qos_;
  double beta_safe_;
  double beta_acq_;
  int warmup_steps_;
  double query_len_norm_;
  double entity_count_norm_;
  std::vector<int> seed_arms_;
  GpModel gp_cost_;
  GpModel gp_accuracy_;
  GpModel gp_delay_;
  Rng warmup_rng_;
  int step_ = 0;
};

}  // namespace edgegate
