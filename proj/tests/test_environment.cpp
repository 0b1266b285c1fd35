#include "edgegate/environment.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

using namespace edgegate;
using edgegate::testing::make_toy_scenario;

TEST_CASE("query topics follow the configured popularity within 2%") {
  ScenarioConfig cfg = make_toy_scenario();
  Environment env(cfg);
  const int n = 20000;
  std::vector<int> counts(4, 0);
  for (int step = 0; step < n; ++step)
    ++counts[env.next_query(9, step, 0).topic];
  const std::vector<double> want = cfg.workload.popularity[0];
  for (int t = 0; t < 4; ++t) {
    CHECK(std::abs(static_cast<double>(counts[t]) / n - want[t]) < 0.02);
  }
}

TEST_CASE("piecewise drift swaps the popularity profile at the boundary") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.workload.drift.kind = DriftSpec::Kind::Piecewise;
  DriftSegment seg;
  seg.from_step = 1000;
  seg.popularity = {{0.0, 0.0, 0.5, 0.5}, {0.5, 0.5, 0.0, 0.0}};
  cfg.workload.drift.segments.push_back(seg);
  Environment env(cfg);

  CHECK(env.popularity_row(999, 0) == cfg.workload.popularity[0]);
  CHECK(env.popularity_row(1000, 0) == seg.popularity[0]);
  // After the switch, topics 0/1 never appear at edge 0.
  for (int step = 1000; step < 1400; ++step) {
    const Query q = env.next_query(3, step, 0);
    CHECK(q.topic >= 2);
  }
}

TEST_CASE("sinusoidal drift blends base and alternate profiles") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.workload.drift.kind = DriftSpec::Kind::Sinusoidal;
  cfg.workload.drift.alt_popularity = {{0.1, 0.1, 0.4, 0.4},
                                       {0.4, 0.4, 0.1, 0.1}};
  cfg.workload.drift.period_steps = 100;
  Environment env(cfg);
  // At step 0 the blend weight is 0 (base); at half period it is 1 (alt).
  CHECK(env.popularity_row(0, 0)[0] == doctest::Approx(0.4));
  CHECK(env.popularity_row(50, 0)[0] == doctest::Approx(0.1));
  CHECK(env.popularity_row(25, 0)[0] == doctest::Approx(0.25));
  // Rows keep summing to one.
  for (int step : {0, 10, 33, 50, 77}) {
    double sum = 0.0;
    for (double v : env.popularity_row(step, 1)) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("queries are deterministic per (seed, step, edge)") {
  ScenarioConfig cfg = make_toy_scenario();
  Environment env(cfg);
  const Query a = env.next_query(42, 7, 1);
  const Query b = env.next_query(42, 7, 1);
  CHECK(a.topic == b.topic);
  CHECK(a.keywords == b.keywords);
  CHECK(a.multi_hop == b.multi_hop);
  CHECK(a.query_len_tokens == b.query_len_tokens);
  CHECK(a.entity_count == b.entity_count);
  const Query c = env.next_query(42, 8, 1);
  const Query d = env.next_query(43, 7, 1);
  const bool differs = c.topic != a.topic || c.keywords != a.keywords ||
                       d.topic != a.topic || d.keywords != a.keywords;
  CHECK(differs);
  // Keywords are distinct and drawn from the query's topic.
  for (int step = 0; step < 200; ++step) {
    const Query q = env.next_query(1, step, 0);
    REQUIRE(q.keywords.size() == 2);
    CHECK(q.keywords[0] != q.keywords[1]);
    for (std::uint32_t k : q.keywords) {
      CHECK(k / 4 == static_cast<std::uint32_t>(q.topic));
    }
  }
}

TEST_CASE("multi-hop rate zero and one are respected") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.workload.multihop_rate = 0.0;
  Environment env0(cfg);
  cfg.workload.multihop_rate = 1.0;
  Environment env1(cfg);
  for (int step = 0; step < 300; ++step) {
    CHECK_FALSE(env0.next_query(5, step, 0).multi_hop);
    CHECK(env1.next_query(5, step, 0).multi_hop);
  }
}

TEST_CASE("success probability composes base, overlap, and multi-hop terms") {
  ScenarioConfig cfg = make_toy_scenario();
  Environment env(cfg);
  Context c;
  c.best_overlap_ratio = 0.5;
  c.multi_hop = false;
  // Arm 1 (edge retrieval): 0.35 + 0.6 * 0.5 = 0.65.
  CHECK(env.success_probability(c, 1) == doctest::Approx(0.65));
  c.multi_hop = true;
  CHECK(env.success_probability(c, 1) == doctest::Approx(0.40));
  // Non-edge arms ignore overlap; arm 3 has no multi-hop penalty.
  CHECK(env.success_probability(c, 0) == doctest::Approx(0.3));
  CHECK(env.success_probability(c, 3) == doctest::Approx(0.95));
  // Clamped to [0, 1].
  c.best_overlap_ratio = 0.0;
  ScenarioConfig hard = cfg;
  hard.arms[1].response.multihop_penalty = 2.0;
  Environment env_hard(hard);
  CHECK(env_hard.success_probability(c, 1) == doctest::Approx(0.0));
}

TEST_CASE("realized accuracy frequency tracks the success probability") {
  ScenarioConfig cfg = make_toy_scenario();
  Environment env(cfg);
  Context c;
  c.best_overlap_ratio = 1.0;
  int hits = 0;
  const int n = 20000;
  for (int step = 0; step < n; ++step) {
    hits += env.realize(c, 3, 11, step, 0).accuracy > 0.5 ? 1 : 0;
  }
  CHECK(std::abs(hits / static_cast<double>(n) - 0.95) < 0.01);
}

TEST_CASE("delay composes the arm draw with the right network link") {
  ScenarioConfig cfg = make_toy_scenario();
  for (auto& arm : cfg.arms) arm.response.delay.stddev = 0.0;
  cfg.workload.network = {{0.25, 0.0}, {{0.03, 0.0}, {0.05, 0.0}}};
  Environment env(cfg);
  Context c;
  c.cloud_delay_s = 0.25;
  c.best_edge_delay_s = 0.05;
  // No retrieval, local generation: no link at all.
  CHECK(env.realize(c, 0, 1, 0, 0).delay_s == doctest::Approx(0.3));
  // Edge retrieval: edge link only.
  CHECK(env.realize(c, 1, 1, 0, 0).delay_s == doctest::Approx(0.35));
  // Cloud retrieval (local generation): cloud link.
  CHECK(env.realize(c, 2, 1, 0, 0).delay_s == doctest::Approx(1.25));
  // Cloud retrieval + cloud generation: one cloud round trip.
  CHECK(env.realize(c, 3, 1, 0, 0).delay_s == doctest::Approx(0.85));
  CHECK(env.expected_delay(c, 3) == doctest::Approx(0.85));
}

TEST_CASE("outcomes price tokens and delay through the cost model") {
  ScenarioConfig cfg = make_toy_scenario();
  for (auto& arm : cfg.arms) {
    arm.response.delay.stddev = 0.0;
    arm.response.tokens_in.stddev = 0.0;
    arm.response.tokens_out.stddev = 0.0;
  }
  cfg.workload.network = {{0.25, 0.0}, {{0.03, 0.0}, {0.05, 0.0}}};
  Environment env(cfg);
  Context c;
  c.cloud_delay_s = 0.25;
  c.best_edge_delay_s = 0.05;
  const Outcome o = env.realize(c, 0, 2, 0, 0);
  CHECK(o.resource_cost ==
        doctest::Approx(2.0 * 3e9 * 130.0 / 1e12).epsilon(1e-9));
  CHECK(o.time_cost == doctest::Approx(0.3 * 1.29).epsilon(1e-9));
  CHECK(o.total_cost == doctest::Approx(o.resource_cost + o.time_cost));
  CHECK(env.expected_total_cost(c, 0) == doctest::Approx(o.total_cost));
}

TEST_CASE("outcome draws are deterministic and clamped") {
  ScenarioConfig cfg = make_toy_scenario();
  cfg.arms[0].response.delay = {0.05, 1.0};  // frequently negative draws
  cfg.arms[0].response.tokens_out = {2.0, 10.0};
  Environment env(cfg);
  Context c;
  bool saw_zero_delay = false;
  for (int step = 0; step < 500; ++step) {
    const Outcome a = env.realize(c, 0, 3, step, 0);
    const Outcome b = env.realize(c, 0, 3, step, 0);
    CHECK(a.delay_s == b.delay_s);
    CHECK(a.tokens_in == b.tokens_in);
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.delay_s >= 0.0);
    CHECK(a.tokens_out >= 0.0);
    CHECK(a.total_cost >= 0.0);
    if (a.delay_s == 0.0) saw_zero_delay = true;
  }
  CHECK(saw_zero_delay);
}

TEST_CASE("clamped normal mean matches simulation") {
  const Dist d{0.3, 0.4};
  Rng rng(123);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += rng.nonneg_normal(d);
  CHECK(clamped_normal_mean(d) == doctest::Approx(sum / n).epsilon(0.01));
  CHECK(clamped_normal_mean({1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(clamped_normal_mean({-1.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("communities materialize their configured chunk counts") {
  ScenarioConfig cfg = make_toy_scenario();
  Environment env(cfg);
  REQUIRE(env.communities().size() == 4);
  for (const auto& com : env.communities()) {
    CHECK(com.chunks.size() == 8);
    CHECK(com.keywords.size() == 4);
    for (std::size_t j = 0; j < com.chunks.size(); ++j) {
      CHECK(com.chunks[j].community_id == com.id);
      CHECK(com.chunks[j].keywords.size() == 2);
      if (j > 0) CHECK(com.chunks[j].id > com.chunks[j - 1].id);
    }
  }
}
