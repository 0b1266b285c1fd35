#pragma once

// Gaussian-process regression with an RBF kernel over a sliding window of
// observations. Targets are standardized per window; posteriors are reported
// in natural units. The Cholesky factor of the Gram matrix is maintained
// incrementally (rank-1 downdate-free eviction + append by triangular solve),
// with a full refactorization fallback that escalates jitter when the Gram
// matrix is numerically indefinite.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgegate {

struct KernelParams {
  double signal_variance = 1.0;
  Eigen::VectorXd length_scale;  // one per input dimension, all > 0
  double noise_variance = 0.0;
  double jitter = 1e-8;
};

// Thrown when the Gram matrix stays indefinite even at the jitter ceiling.
class FactorizationError : public std::runtime_error {
 public:
  explicit FactorizationError(const std::string& what)
      : std::runtime_error(what) {}
};

double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const KernelParams& p);

class GpModel {
 public:
  struct Posterior {
    double mean = 0.0;
    double stddev = 0.0;
  };

  GpModel(int dim, KernelParams params, int max_observations = 512);

  // Adds (x, y); evicts the oldest point first when the window is full.
  // Throws std::invalid_argument on dimension mismatch or non-finite input,
  // leaving the model unchanged.
  void observe(const Eigen::VectorXd& x, double y);

  Posterior posterior(const Eigen::VectorXd& q) const;

  int dim() const { return dim_; }
  int size() const { return n_; }
  int max_observations() const { return max_obs_; }
  const KernelParams& params() const { return params_; }
  double effective_jitter() const { return jitter_; }
  const std::vector<Eigen::VectorXd>& inputs() const { return xs_; }
  const std::vector<double>& targets() const { return ys_; }

  // Rebuilds the Cholesky factor from scratch (used as fallback and to
  // cross-check the incremental factor in tests).
  void refactorize();

 private:
  void drop_oldest();
  void append_point(const Eigen::VectorXd& x);
  void refresh_alpha();

  int dim_;
  KernelParams params_;
  int max_obs_;
  int n_ = 0;
  std::vector<Eigen::VectorXd> xs_;
  std::vector<double> ys_;
  Eigen::MatrixXd chol_;     // lower-triangular factor, top-left n_ x n_ valid
  Eigen::VectorXd alpha_;    // (K + sigma_n^2 I + jitter I)^-1 y_std
  double target_mean_ = 0.0;
  double target_scale_ = 1.0;  // 1 when the window stddev is ~0
  double jitter_;              // effective jitter, escalated on failure
};

}  // namespace edgegate
