#include "edgegate/cost_model.hpp"

#include <cmath>

#include "doctest.h"
#include "edgegate/rng.hpp"

using namespace edgegate;

TEST_CASE("resource cost follows 2 * params * tokens / 1e12 * calibration") {
  ArmCostProfile p;
  p.model_params = 3e9;
  p.calibration = 1.0;
  // 2 * 3e9 * 100 / 1e12 = 0.6 TFLOPs
  CHECK(resource_cost(p, 60.0, 40.0) == doctest::Approx(0.6).epsilon(1e-12));

  p.calibration = 2.0;
  CHECK(resource_cost(p, 60.0, 40.0) == doctest::Approx(1.2).epsilon(1e-12));

  CHECK(resource_cost(p, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("mean-token workloads land near the published estimates") {
  ArmCostProfile slm;
  slm.model_params = 3e9;
  slm.calibration = 1.0;
  // Direct-generation workload: tiny prompts, ~0.26 TFLOPs.
  CHECK(resource_cost(slm, 16.01, 27.21) ==
        doctest::Approx(2.0 * 3e9 * 43.22 / 1e12).epsilon(1e-12));
  // Naive retrieval stuffs ~3.6k tokens of context.
  CHECK(resource_cost(slm, 3632.0, 26.59) ==
        doctest::Approx(21.95154).epsilon(1e-6));
  // Graph-indexed retrieval nearly triples that.
  CHECK(resource_cost(slm, 9017.0, 142.7) ==
        doctest::Approx(54.9582).epsilon(1e-6));
}

TEST_CASE("time cost is delay times the GPU rate") {
  ArmCostProfile p;
  p.gpu_rate_tflops = 9.7;
  CHECK(time_cost(p, 2.0) == doctest::Approx(19.4).epsilon(1e-12));
  p.gpu_rate_tflops = 60.0;
  CHECK(time_cost(p, 0.5) == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(time_cost(p, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("total cost is the weighted sum of the two components") {
  CostWeights w;  // defaults 1.0 / 1.0
  CHECK(total_cost(w, 22.98, 6.1) == doctest::Approx(29.08).epsilon(1e-12));
  w.delta_resource = 0.5;
  w.delta_delay = 2.0;
  CHECK(total_cost(w, 10.0, 3.0) == doctest::Approx(11.0).epsilon(1e-12));
}

TEST_CASE("costs are monotone in tokens, delay, and weights (property)") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    ArmCostProfile p;
    p.model_params = 1e9 * (1.0 + 99.0 * rng.uniform());
    p.gpu_rate_tflops = 1.0 + 59.0 * rng.uniform();
    p.calibration = 0.1 + 2.0 * rng.uniform();
    const double tin = 5000.0 * rng.uniform();
    const double tout = 500.0 * rng.uniform();
    const double extra = 1.0 + 100.0 * rng.uniform();
    CHECK(resource_cost(p, tin + extra, tout) > resource_cost(p, tin, tout));
    CHECK(resource_cost(p, tin, tout + extra) > resource_cost(p, tin, tout));
    const double d = 10.0 * rng.uniform();
    CHECK(time_cost(p, d + 0.1) > time_cost(p, d));
    CHECK(resource_cost(p, tin, tout) >= 0.0);
    CHECK(time_cost(p, d) >= 0.0);
  }
}

TEST_CASE("cost operations reject negative or non-finite input") {
  ArmCostProfile p;
  p.model_params = 3e9;
  p.gpu_rate_tflops = 1.29;
  CHECK_THROWS_AS(resource_cost(p, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(resource_cost(p, 0.0, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(time_cost(p, -0.5), std::invalid_argument);
  CostWeights w;
  CHECK_THROWS_AS(total_cost(w, -1.0, 0.0), std::invalid_argument);
}
