#include "edgegate/gate.hpp"

#include <algorithm>
#include <stdexcept>

#include "edgegate/environment.hpp"

namespace edgegate {

namespace {

KernelParams make_kernel(const KernelSpec& spec, int dim) {
  KernelParams p;
  p.signal_variance = spec.signal_variance;
  p.noise_variance = spec.noise_variance;
  p.jitter = spec.jitter;
  p.length_scale.resize(dim);
  if (spec.length_scales.size() == 1) {
    p.length_scale.setConstant(spec.length_scales.front());
  } else if (static_cast<int>(spec.length_scales.size()) == dim) {
    for (int i = 0; i < dim; ++i) p.length_scale[i] = spec.length_scales[i];
  } else {
    throw std::invalid_argument(
        "kernel length_scales must have 1 or feature-dim entries");
  }
  return p;
}

}  // namespace

std::vector<int> safe_set_from_bounds(const std::vector<ArmBounds>& bounds,
                                      const std::vector<int>& seed_arms,
                                      double beta, const QoSSpec& qos) {
  std::vector<int> safe;
  for (int i = 0; i < static_cast<int>(bounds.size()); ++i) {
    const bool seeded =
        std::find(seed_arms.begin(), seed_arms.end(), i) != seed_arms.end();
    const ArmBounds& b = bounds[i];
    const bool certified =
        b.accuracy_mean - beta * b.accuracy_stddev >= qos.min_accuracy &&
        b.delay_mean + beta * b.delay_stddev <= qos.max_delay_s;
    if (seeded || certified) safe.push_back(i);
  }
  return safe;
}

CollaborativeGate::CollaborativeGate(const ScenarioConfig& cfg,
                                     std::uint64_t seed)
    : n_arms_(static_cast<int>(cfg.arms.size())),
      qos_(cfg.qos),
      beta_safe_(cfg.gate.beta_safe),
      beta_acq_(cfg.gate.beta_acq),
      warmup_steps_(cfg.gate.warmup_steps),
      query_len_norm_(cfg.gate.query_len_norm),
      entity_count_norm_(cfg.gate.entity_count_norm),
      gp_cost_(cfg.feature_dim(), make_kernel(cfg.gate.cost_kernel,
                                              cfg.feature_dim()),
               cfg.gate.window),
      gp_accuracy_(cfg.feature_dim(), make_kernel(cfg.gate.accuracy_kernel,
                                                  cfg.feature_dim()),
                   cfg.gate.window),
      gp_delay_(cfg.feature_dim(), make_kernel(cfg.gate.delay_kernel,
                                               cfg.feature_dim()),
                cfg.gate.window),
      warmup_rng_(mix_seed({seed, kStreamGateWarmup})) {
  if (n_arms_ < 1)
    throw std::invalid_argument("CollaborativeGate: no arms configured");
  for (const auto& name : cfg.gate.safe_seed_arms) {
    const int idx = cfg.arm_index(name);
    if (idx < 0)
      throw std::invalid_argument("CollaborativeGate: unknown seed arm " +
                                  name);
    seed_arms_.push_back(idx);
  }
  if (seed_arms_.empty())
    throw std::invalid_argument(
        "CollaborativeGate: safe seed set must be non-empty");
  std::sort(seed_arms_.begin(), seed_arms_.end());
}

Eigen::VectorXd CollaborativeGate::featurize(const Context& c,
                                             int arm_index) const {
  if (arm_index < 0 || arm_index >= n_arms_)
    throw std::invalid_argument("featurize: arm index out of range");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(6 + n_arms_);
  f[0] = c.cloud_delay_s;
  f[1] = c.best_edge_delay_s;
  f[2] = c.best_overlap_ratio;
  f[3] = c.multi_hop ? 1.0 : 0.0;
  f[4] = c.query_len_tokens / query_len_norm_;
  f[5] = c.entity_count / entity_count_norm_;
  f[6 + arm_index] = 1.0;
  return f;
}

std::vector<ArmBounds> CollaborativeGate::arm_bounds(const Context& c) const {
  std::vector<ArmBounds> bounds(n_arms_);
  for (int a = 0; a < n_arms_; ++a) {
    const Eigen::VectorXd f = featurize(c, a);
    const auto acc = gp_accuracy_.posterior(f);
    const auto delay = gp_delay_.posterior(f);
    bounds[a] = {acc.mean, acc.stddev, delay.mean, delay.stddev};
  }
  return bounds;
}

std::vector<int> CollaborativeGate::safe_set(const Context& c) const {
  return safe_set_from_bounds(arm_bounds(c), seed_arms_, beta_safe_, qos_);
}

Decision CollaborativeGate::decide(const Context& c) {
  Decision d;
  if (step_ < warmup_steps_) {
    d.phase = Phase::Warmup;
    d.arm_index = static_cast<int>(warmup_rng_.uniform_int(n_arms_));
    d.safe_set_size = n_arms_;
  } else {
    d.phase = Phase::Exploit;
    const std::vector<int> safe = safe_set(c);
    d.safe_set_size = static_cast<int>(safe.size());
    int best = safe.front();
    double best_lcb = 0.0;
    bool first = true;
    for (int a : safe) {
      const auto post = gp_cost_.posterior(featurize(c, a));
      const double lcb = post.mean - beta_acq_ * post.stddev;
      if (first || lcb < best_lcb) {
        best = a;
        best_lcb = lcb;
        first = false;
      }
    }
    d.arm_index = best;
  }
  ++step_;
  return d;
}

void CollaborativeGate::update(const Context& c, int arm_index,
                               const Outcome& o) {
  const Eigen::VectorXd f = featurize(c, arm_index);
  if (!std::isfinite(o.total_cost) || !std::isfinite(o.accuracy) ||
      !std::isfinite(o.delay_s)) {
    throw std::invalid_argument("CollaborativeGate::update: non-finite outcome");
  }
  gp_cost_.observe(f, o.total_cost);
  gp_accuracy_.observe(f, o.accuracy);
  gp_delay_.observe(f, o.delay_s);
}

}  // namespace edgegate
