#pragma once

// TFLOPs-denominated cost accounting. Resource cost follows the standard
// 2 * params * tokens transformer estimate scaled by a per-arm calibration
// factor; time cost converts wall-clock delay into equivalent TFLOPs at the
// serving GPU's sustained rate, so both objectives share one unit.

#include <cmath>
#include <stdexcept>

namespace edgegate {

struct ArmCostProfile {
  double model_params = 0.0;      // parameter count, e.g. 3e9
  double gpu_rate_tflops = 0.0;   // sustained TFLOPs of the serving GPU
  double calibration = 1.0;       // multiplicative fit factor
};

struct CostWeights {
  double delta_resource = 1.0;
  double delta_delay = 1.0;
};

struct Outcome {
  double accuracy = 0.0;  // realized 0/1 correctness
  double delay_s = 0.0;
  double tokens_in = 0.0;
  double tokens_out = 0.0;
  double resource_cost = 0.0;  // TFLOPs
  double time_cost = 0.0;      // TFLOPs
  double total_cost = 0.0;
};

inline void check_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(what) +
                                " must be finite and non-negative");
  }
}

inline double resource_cost(const ArmCostProfile& p, double tokens_in,
                            double tokens_out) {
  check_finite_nonneg(tokens_in, "resource_cost: tokens_in");
  check_finite_nonneg(tokens_out, "resource_cost: tokens_out");
  check_finite_nonneg(p.model_params, "resource_cost: model_params");
  check_finite_nonneg(p.calibration, "resource_cost: calibration");
  return 2.0 * p.model_params * (tokens_in + tokens_out) / 1e12 *
         p.calibration;
}

inline double time_cost(const ArmCostProfile& p, double delay_s) {
  check_finite_nonneg(delay_s, "time_cost: delay_s");
  check_finite_nonneg(p.gpu_rate_tflops, "time_cost: gpu_rate_tflops");
  return delay_s * p.gpu_rate_tflops;
}

inline double total_cost(const CostWeights& w, double resource,
                         double time) {
  check_finite_nonneg(resource, "total_cost: resource");
  check_finite_nonneg(time, "total_cost: time");
  return w.delta_resource * resource + w.delta_delay * time;
}

}  // namespace edgegate
