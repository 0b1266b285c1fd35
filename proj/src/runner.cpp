#include "edgegate/runner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgegate {

namespace {

class SafeOboPolicy : public Policy {
 public:
  SafeOboPolicy(const ScenarioConfig& cfg, std::uint64_t seed)
      : gate_(cfg, seed) {}
  std::string name() const override { return "safeobo"; }
  Decision decide(const Context& c) override { return gate_.decide(c); }
  void observe(const Context& c, int arm_index, const Outcome& o) override {
    gate_.update(c, arm_index, o);
  }

 private:
  CollaborativeGate gate_;
};

// Fixed-arm baseline; every step counts as exploitation and the safe-set
// column reports the number of configured arms.
class AlwaysArmPolicy : public Policy {
 public:
  AlwaysArmPolicy(const ScenarioConfig& cfg, std::string arm_name)
      : name_("always:" + arm_name), n_arms_(static_cast<int>(cfg.arms.size())) {
    arm_ = cfg.arm_index(arm_name);
    if (arm_ < 0)
      throw std::invalid_argument("always policy: unknown arm '" + arm_name +
                                  "'");
  }
  std::string name() const override { return name_; }
  Decision decide(const Context&) override {
    return {arm_, Phase::Exploit, n_arms_};
  }

 private:
  std::string name_;
  int n_arms_;
  int arm_;
};

class UniformRandomPolicy : public Policy {
 public:
  UniformRandomPolicy(const ScenarioConfig& cfg, std::uint64_t seed)
      : n_arms_(static_cast<int>(cfg.arms.size())),
        rng_(mix_seed({seed, kStreamUniformPolicy})) {}
  std::string name() const override { return "uniform"; }
  Decision decide(const Context&) override {
    return {static_cast<int>(rng_.uniform_int(n_arms_)), Phase::Exploit,
            n_arms_};
  }

 private:
  int n_arms_;
  Rng rng_;
};

// Clairvoyant baseline: filters arms by *expected* QoS satisfaction under
// the true scenario parameters and picks the cheapest in expectation; if no
// arm qualifies it falls back to the highest expected accuracy.
class OraclePolicy : public Policy {
 public:
  OraclePolicy(const ScenarioConfig& cfg, const Environment& env)
      : cfg_(cfg), env_(env) {}
  std::string name() const override { return "oracle"; }
  Decision decide(const Context& c) override {
    const int n = static_cast<int>(cfg_.arms.size());
    int feasible = 0;
    int best = -1;
    double best_cost = 0.0;
    for (int a = 0; a < n; ++a) {
      if (env_.success_probability(c, a) < cfg_.qos.min_accuracy) continue;
      if (env_.expected_delay(c, a) > cfg_.qos.max_delay_s) continue;
      ++feasible;
      const double cost = env_.expected_total_cost(c, a);
      if (best < 0 || cost < best_cost) {
        best = a;
        best_cost = cost;
      }
    }
    if (best < 0) {
      // No arm satisfies QoS in expectation: least-bad accuracy wins.
      double best_acc = -1.0;
      for (int a = 0; a < n; ++a) {
        const double p = env_.success_probability(c, a);
        if (p > best_acc) {
          best_acc = p;
          best = a;
        }
      }
    }
    return {best, Phase::Exploit, feasible};
  }

 private:
  const ScenarioConfig& cfg_;
  const Environment& env_;
};

void accumulate(PhaseStats& s, const StepRecord& r) {
  ++s.steps;
  s.total_cost += r.outcome.total_cost;
  s.mean_cost += r.outcome.total_cost;
  s.mean_accuracy += r.outcome.accuracy;
  s.mean_delay_s += r.outcome.delay_s;
  s.accuracy_violation_rate += r.accuracy_violation ? 1.0 : 0.0;
  s.delay_violation_rate += r.delay_violation ? 1.0 : 0.0;
  s.violation_rate += (r.accuracy_violation || r.delay_violation) ? 1.0 : 0.0;
}

void finalize(PhaseStats& s) {
  if (s.steps == 0) return;
  s.mean_cost /= s.steps;
  s.mean_accuracy /= s.steps;
  s.mean_delay_s /= s.steps;
  s.accuracy_violation_rate /= s.steps;
  s.delay_violation_rate /= s.steps;
  s.violation_rate /= s.steps;
}

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& spec,
                                    const ScenarioConfig& cfg,
                                    const Environment& env,
                                    std::uint64_t seed) {
  if (spec == "safeobo") return std::make_unique<SafeOboPolicy>(cfg, seed);
  if (spec == "uniform") return std::make_unique<UniformRandomPolicy>(cfg, seed);
  if (spec == "oracle") return std::make_unique<OraclePolicy>(cfg, env);
  if (spec.rfind("always:", 0) == 0)
    return std::make_unique<AlwaysArmPolicy>(cfg, spec.substr(7));
  throw std::invalid_argument("unknown policy spec: " + spec);
}

RunResult run_scenario(const ScenarioConfig& cfg,
                       const std::string& policy_spec, std::uint64_t seed) {
  Environment env(cfg);
  auto policy = make_policy(policy_spec, cfg, env, seed);

  const int n_edges = cfg.knowledge.edge_count;
  SynonymMap synonyms(cfg.knowledge.synonym_classes);
  std::vector<EdgeStore> stores;
  stores.reserve(n_edges);
  for (int e = 0; e < n_edges; ++e) {
    stores.emplace_back(e, cfg.knowledge.capacity,
                        cfg.knowledge.trigger_threshold, synonyms);
  }
  // Global-trigger mode counts queries across all edges; when the shared
  // counter fires, every store runs distribution from its buffered classes
  // (each store buffers every query in this mode).
  int global_pending = 0;

  RunResult out;
  out.records.reserve(cfg.steps);
  RunSummary& sum = out.summary;
  sum.policy = policy->name();
  sum.seed = seed;
  sum.steps = cfg.steps;
  sum.warmup_steps = cfg.gate.warmup_steps;
  sum.arm_counts.assign(cfg.arms.size(), 0);

  for (int step = 0; step < cfg.steps; ++step) {
    const int edge = step % n_edges;
    const Query q = env.next_query(seed, step, edge);
    const NetworkSample net = env.sample_network(seed, step);
    const Context c = env.make_context(q, net, stores);

    const Decision d = policy->decide(c);
    const Outcome o = env.realize(c, d.arm_index, seed, step, edge);
    policy->observe(c, d.arm_index, o);

    if (cfg.knowledge.per_edge_trigger) {
      stores[edge].record_query_and_maybe_update(
          q.keywords, env.communities(), cfg.knowledge.top_k,
          cfg.knowledge.push_limit);
    } else {
      for (auto& st : stores) st.buffer_query(q.keywords);
      if (++global_pending >= cfg.knowledge.trigger_threshold) {
        global_pending = 0;
        for (auto& st : stores) {
          st.distribute(env.communities(), cfg.knowledge.top_k,
                        cfg.knowledge.push_limit);
          st.clear_buffer();
        }
      }
    }

    StepRecord rec;
    rec.step = step + 1;
    rec.edge_id = edge;
    rec.context = c;
    rec.arm_index = d.arm_index;
    rec.arm_name = cfg.arms[d.arm_index].name;
    rec.phase = d.phase;
    rec.outcome = o;
    rec.safe_set_size = d.safe_set_size;
    rec.accuracy_violation = o.accuracy < cfg.qos.min_accuracy;
    rec.delay_violation = o.delay_s > cfg.qos.max_delay_s;

    ++sum.arm_counts[d.arm_index];
    accumulate(sum.overall, rec);
    accumulate(d.phase == Phase::Warmup ? sum.warmup : sum.exploit, rec);
    out.records.push_back(std::move(rec));
  }
  finalize(sum.overall);
  finalize(sum.warmup);
  finalize(sum.exploit);
  return out;
}

Comparison compare_policies(const ScenarioConfig& cfg,
                            const std::vector<std::string>& policy_specs,
                            const std::vector<std::uint64_t>& seeds,
                            std::string reference_spec) {
  if (seeds.empty())
    throw std::invalid_argument("compare_policies: no seeds given");
  if (reference_spec.empty()) {
    if (cfg.reference_arm.empty())
      throw std::invalid_argument(
          "compare_policies: no reference policy (scenario has no "
          "reference_arm)");
    reference_spec = "always:" + cfg.reference_arm;
  }
  std::vector<std::string> specs = policy_specs;
  if (std::find(specs.begin(), specs.end(), reference_spec) == specs.end())
    specs.push_back(reference_spec);

  Comparison cmp;
  cmp.reference_policy = reference_spec;
  cmp.seeds = seeds;

  // Seed-average of per-run phase statistics. Phase sizes are identical
  // across seeds for every policy, so averaging the per-run means is exact.
  auto average = [&](const std::string& spec) {
    ComparisonRow row;
    row.policy = spec;
    const int n = static_cast<int>(seeds.size());
    auto add = [n](PhaseStats& into, const PhaseStats& from) {
      into.steps = from.steps;
      into.total_cost += from.total_cost / n;
      into.mean_cost += from.mean_cost / n;
      into.mean_accuracy += from.mean_accuracy / n;
      into.mean_delay_s += from.mean_delay_s / n;
      into.accuracy_violation_rate += from.accuracy_violation_rate / n;
      into.delay_violation_rate += from.delay_violation_rate / n;
      into.violation_rate += from.violation_rate / n;
    };
    for (std::uint64_t seed : seeds) {
      RunResult r = run_scenario(cfg, spec, seed);
      add(row.overall, r.summary.overall);
      add(row.warmup, r.summary.warmup);
      add(row.exploit, r.summary.exploit);
    }
    return row;
  };

  ComparisonRow ref = average(reference_spec);
  for (const auto& spec : specs) {
    ComparisonRow row = spec == reference_spec ? ref : average(spec);
    row.cost_reduction =
        ref.exploit.mean_cost > 0.0
            ? 1.0 - row.exploit.mean_cost / ref.exploit.mean_cost
            : 0.0;
    cmp.rows.push_back(std::move(row));
  }
  return cmp;
}

}  // namespace edgegate
