#include "edgegate/gate.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "edgegate/environment.hpp"
#include "test_support.hpp"

using namespace edgegate;
using edgegate::testing::make_toy_scenario;

namespace {

Context typical_context() {
  Context c;
  c.cloud_delay_s = 0.25;
  c.best_edge_delay_s = 0.05;
  c.best_overlap_ratio = 0.6;
  c.best_edge_id = 1;
  c.multi_hop = false;
  c.query_len_tokens = 16;
  c.entity_count = 4;
  return c;
}

Outcome outcome_of(double cost, double accuracy, double delay) {
  Outcome o;
  o.accuracy = accuracy;
  o.delay_s = delay;
  o.total_cost = cost;
  o.resource_cost = cost;
  return o;
}

}  // namespace

TEST_CASE("featurize lays out context features plus a one-hot arm code") {
  ScenarioConfig cfg = make_toy_scenario();
  CollaborativeGate gate(cfg, 1);
  const Context c = typical_context();
  const Eigen::VectorXd f = gate.featurize(c, 2);
  REQUIRE(f.size() == 10);
  CHECK(f[0] == doctest::Approx(0.25));
  CHECK(f[1] == doctest::Approx(0.05));
  CHECK(f[2] == doctest::Approx(0.6));
  CHECK(f[3] == doctest::Approx(0.0));
  CHECK(f[4] == doctest::Approx(16.0 / cfg.gate.query_len_norm));
  CHECK(f[5] == doctest::Approx(4.0 / cfg.gate.entity_count_norm));
  CHECK(f[6] == 0.0);
  CHECK(f[7] == 0.0);
  CHECK(f[8] == 1.0);
  CHECK(f[9] == 0.0);
  Context mh = c;
  mh.multi_hop = true;
  CHECK(gate.featurize(mh, 0)[3] == doctest::Approx(1.0));
  CHECK(gate.featurize(mh, 0)[6] == 1.0);
  CHECK_THROWS_AS(gate.featurize(c, 4), std::invalid_argument);
  CHECK_THROWS_AS(gate.featurize(c, -1), std::invalid_argument);
}

TEST_CASE("safe_set_from_bounds applies the confidence rule exactly") {
  QoSSpec qos{0.8, 1.0};
  std::vector<ArmBounds> bounds(3);
  // Arm 0: accuracy LCB 0.90 - 2*0.02 = 0.86 >= 0.8, delay UCB
  // 0.5 + 2*0.1 = 0.7 <= 1.0 -> safe.
  bounds[0] = {0.90, 0.02, 0.5, 0.1};
  // Arm 1: accuracy LCB 0.85 - 2*0.05 = 0.75 < 0.8 -> unsafe.
  bounds[1] = {0.85, 0.05, 0.5, 0.1};
  // Arm 2: delay UCB 0.9 + 2*0.1 = 1.1 > 1.0 -> unsafe.
  bounds[2] = {0.99, 0.0, 0.9, 0.1};
  CHECK(safe_set_from_bounds(bounds, {}, 2.0, qos) == std::vector<int>{0});
  // Seed arms stay in regardless of their bounds.
  CHECK(safe_set_from_bounds(bounds, {2}, 2.0, qos) ==
        std::vector<int>{0, 2});
  CHECK(safe_set_from_bounds(bounds, {1, 2}, 2.0, qos) ==
        std::vector<int>{0, 1, 2});
  // Exact boundary values count as safe.
  bounds[1] = {0.9, 0.05, 0.8, 0.1};  // LCB = 0.8, UCB = 1.0
  CHECK(safe_set_from_bounds(bounds, {}, 2.0, qos) ==
        std::vector<int>{0, 1});
}

TEST_CASE("larger beta only shrinks the non-seeded safe set") {
  Rng rng(13);
  QoSSpec qos{0.75, 2.0};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ArmBounds> bounds(4);
    for (auto& b : bounds) {
      b.accuracy_mean = rng.uniform();
      b.accuracy_stddev = 0.2 * rng.uniform();
      b.delay_mean = 3.0 * rng.uniform();
      b.delay_stddev = 0.5 * rng.uniform();
    }
    const std::vector<int> seeds = {static_cast<int>(rng.uniform_int(4))};
    const auto wide = safe_set_from_bounds(bounds, seeds, 1.0, qos);
    const auto narrow = safe_set_from_bounds(bounds, seeds, 2.5, qos);
    for (int a : narrow) {
      CHECK(std::find(wide.begin(), wide.end(), a) != wide.end());
    }
    CHECK(std::find(narrow.begin(), narrow.end(), seeds[0]) != narrow.end());
  }
}

TEST_CASE("with no observations only seed arms are certified") {
  ScenarioConfig cfg = make_toy_scenario();  // seed arm: cloud-llm (index 3)
  CollaborativeGate gate(cfg, 7);
  CHECK(gate.safe_set(typical_context()) == std::vector<int>{3});
}

TEST_CASE("warm-up explores uniformly and ignores model state") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.gate.warmup_steps = 10000;
  CollaborativeGate gate(cfg, 99);
  CollaborativeGate corrupted(cfg, 99);
  const Context c = typical_context();
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 10000; ++i) {
    const Decision d = gate.decide(c);
    CHECK(d.phase == Phase::Warmup);
    ++counts[d.arm_index];
    // Feed the twin absurd outcomes: warm-up choices must not change.
    const Decision dc = corrupted.decide(c);
    corrupted.update(c, dc.arm_index, outcome_of(1e6 * ((i % 5) - 2.0) *
                                                     ((i % 5) - 2.0),
                                                 i % 2, 100.0 * (i % 3)));
    CHECK(dc.arm_index == d.arm_index);
  }
  for (int a = 0; a < 4; ++a) {
    CHECK(std::abs(counts[a] / 10000.0 - 0.25) < 0.02);
  }
}

TEST_CASE("exploitation picks the lowest cost LCB within the safe set") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.gate.warmup_steps = 1;
  // Very tight kernels so each (context, arm) pair is learned in isolation.
  cfg.gate.cost_kernel.noise_variance = 1e-6;
  cfg.gate.accuracy_kernel.noise_variance = 1e-6;
  cfg.gate.delay_kernel.noise_variance = 1e-6;
  CollaborativeGate gate(cfg, 5);
  const Context c = typical_context();

  // Train arms 2 and 3 as accurate and fast; make arm 3 cheaper.
  for (int rep = 0; rep < 30; ++rep) {
    gate.update(c, 2, outcome_of(50.0, 1.0, 1.0));
    gate.update(c, 3, outcome_of(12.5, 1.0, 0.8));
    gate.update(c, 0, outcome_of(1.0, 0.0, 0.3));  // cheap but inaccurate
  }
  gate.decide(c);  // consumes the single warm-up step
  const Decision d = gate.decide(c);
  CHECK(d.phase == Phase::Exploit);
  CHECK(d.arm_index == 3);
  CHECK(d.safe_set_size >= 2);
}

TEST_CASE("exploitation falls back to the seed arm when nothing certifies") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.gate.warmup_steps = 1;
  CollaborativeGate gate(cfg, 5);
  const Context c = typical_context();
  gate.decide(c);
  const Decision d = gate.decide(c);
  CHECK(d.phase == Phase::Exploit);
  CHECK(d.arm_index == 3);  // seed arm, nothing else certified
  CHECK(d.safe_set_size == 1);
}

TEST_CASE("update validates outcomes atomically") {
  ScenarioConfig cfg = make_toy_scenario();
  CollaborativeGate gate(cfg, 5);
  const Context c = typical_context();
  gate.update(c, 1, outcome_of(10.0, 1.0, 0.5));
  CHECK(gate.cost_model().size() == 1);
  Outcome bad = outcome_of(std::nan(""), 1.0, 0.5);
  CHECK_THROWS_AS(gate.update(c, 1, bad), std::invalid_argument);
  CHECK(gate.cost_model().size() == 1);
  CHECK(gate.accuracy_model().size() == 1);
  CHECK(gate.delay_model().size() == 1);
  CHECK_THROWS_AS(gate.update(c, 9, outcome_of(1, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("decisions are reproducible for a fixed seed") {
  ScenarioConfig cfg = make_toy_scenario();
  CollaborativeGate a(cfg, 123), b(cfg, 123), other(cfg, 124);
  const Context c = typical_context();
  bool any_diff = false;
  for (int i = 0; i < 200; ++i) {
    const Decision da = a.decide(c);
    const Decision db = b.decide(c);
    CHECK(da.arm_index == db.arm_index);
    if (other.decide(c).arm_index != da.arm_index) any_diff = true;
    const Outcome o = outcome_of(10.0 + i % 7, (i % 3) ? 1.0 : 0.0, 0.5);
    a.update(c, da.arm_index, o);
    b.update(c, db.arm_index, o);
  }
  CHECK(any_diff);  // different seeds explore differently
}
