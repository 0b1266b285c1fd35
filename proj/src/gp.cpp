#include "edgegate/gp.hpp"

#include <cmath>
#include <limits>

namespace edgegate {

namespace {

constexpr double kJitterCeiling = 1e-4;
constexpr double kJitterFloor = 1e-8;

void check_vector(const Eigen::VectorXd& v, int dim, const char* what) {
  if (v.size() != dim) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(dim) + ", got " +
                                std::to_string(v.size()));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) +
                                  ": non-finite component at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const KernelParams& p) {
  const int dim = static_cast<int>(p.length_scale.size());
  check_vector(a, dim, "rbf_kernel: a");
  check_vector(b, dim, "rbf_kernel: b");
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double z = (a[d] - b[d]) / p.length_scale[d];
    s += z * z;
  }
  return p.signal_variance * std::exp(-0.5 * s);
}

GpModel::GpModel(int dim, KernelParams params, int max_observations)
    : dim_(dim), params_(std::move(params)), max_obs_(max_observations) {
  if (dim_ < 1) throw std::invalid_argument("GpModel: dim must be >= 1");
  if (max_obs_ < 1)
    throw std::invalid_argument("GpModel: max_observations must be >= 1");
  if (params_.length_scale.size() != dim_)
    throw std::invalid_argument("GpModel: length_scale size != dim");
  for (Eigen::Index i = 0; i < params_.length_scale.size(); ++i) {
    if (!(params_.length_scale[i] > 0.0))
      throw std::invalid_argument("GpModel: length scales must be positive");
  }
  if (!(params_.signal_variance > 0.0))
    throw std::invalid_argument("GpModel: signal_variance must be positive");
  if (params_.noise_variance < 0.0)
    throw std::invalid_argument("GpModel: noise_variance must be >= 0");
  if (!(params_.jitter > 0.0))
    throw std::invalid_argument("GpModel: jitter must be positive");
  jitter_ = params_.jitter;
  chol_.setZero(max_obs_, max_obs_);
  xs_.reserve(max_obs_ + 1);
  ys_.reserve(max_obs_ + 1);
}

void GpModel::observe(const Eigen::VectorXd& x, double y) {
  check_vector(x, dim_, "GpModel::observe: x");
  if (!std::isfinite(y))
    throw std::invalid_argument("GpModel::observe: non-finite target");
  if (n_ == max_obs_) drop_oldest();
  xs_.push_back(x);
  ys_.push_back(y);
  append_point(x);
  refresh_alpha();
}

// Removes row/column 0 from the factorization. With L = [[l11, 0], [l21, L22]]
// the trailing Gram block satisfies K22 = l21 l21^T + L22 L22^T, so the factor
// of K22 alone is the rank-1 Cholesky update of L22 by l21 (LINPACK dchud via
// Givens rotations). Columns are written shifted one slot up-left in place.
void GpModel::drop_oldest() {
  const int m = n_ - 1;
  if (m > 0) {
    Eigen::VectorXd v = chol_.col(0).segment(1, m);
    for (int j = 0; j < m; ++j) {
      const double a = chol_(j + 1, j + 1);
      const double b = v[j];
      const double r = std::hypot(a, b);
      const double c = r / a;
      const double s = b / a;
      chol_(j, j) = r;
      const int len = m - 1 - j;
      if (len > 0) {
        auto src = chol_.col(j + 1).segment(j + 2, len);
        auto dst = chol_.col(j).segment(j + 1, len);
        auto vs = v.segment(j + 1, len);
        dst = (src + s * vs) / c;
        vs = c * vs.eval() - s * dst;
      }
    }
  }
  xs_.erase(xs_.begin());
  ys_.erase(ys_.begin());
  n_ = m;
}

void GpModel::append_point(const Eigen::VectorXd& x) {
  const int m = n_;
  const double diag =
      params_.signal_variance + params_.noise_variance + jitter_;
  Eigen::VectorXd k(m);
  for (int i = 0; i < m; ++i) k[i] = rbf_kernel(x, xs_[i], params_);
  double d2 = diag;
  if (m > 0) {
    Eigen::VectorXd c = chol_.topLeftCorner(m, m)
                            .triangularView<Eigen::Lower>()
                            .solve(k);
    d2 = diag - c.squaredNorm();
    chol_.row(m).head(m) = c.transpose();
  }
  if (d2 <= diag * 1e-12) {
    // Numerically indefinite append (e.g. duplicate inputs with zero noise):
    // fall back to a full refactorization, which escalates jitter as needed.
    n_ = m + 1;
    refactorize();
    return;
  }
  chol_(m, m) = std::sqrt(d2);
  n_ = m + 1;
}

void GpModel::refactorize() {
  Eigen::MatrixXd gram(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double kij = rbf_kernel(xs_[i], xs_[j], params_);
      gram(i, j) = kij;
      gram(j, i) = kij;
    }
  }
  for (;;) {
    Eigen::MatrixXd reg = gram;
    reg.diagonal().array() += params_.noise_variance + jitter_;
    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() == Eigen::Success) {
      chol_.topLeftCorner(n_, n_) = llt.matrixL();
      refresh_alpha();
      return;
    }
    const double next = std::max(jitter_ * 2.0, kJitterFloor);
    if (next > kJitterCeiling) {
      throw FactorizationError(
          "GpModel: Gram matrix not positive definite at jitter ceiling " +
          std::to_string(kJitterCeiling));
    }
    jitter_ = next;
  }
}

void GpModel::refresh_alpha() {
  if (n_ == 0) {
    target_mean_ = 0.0;
    target_scale_ = 1.0;
    return;
  }
  double sum = 0.0;
  for (double y : ys_) sum += y;
  target_mean_ = sum / n_;
  double ss = 0.0;
  for (double y : ys_) {
    const double d = y - target_mean_;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / n_);
  target_scale_ = sd < 1e-12 ? 1.0 : sd;
  Eigen::VectorXd ystd(n_);
  for (int i = 0; i < n_; ++i) ystd[i] = (ys_[i] - target_mean_) / target_scale_;
  auto lower = chol_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>();
  Eigen::VectorXd tmp = lower.solve(ystd);
  alpha_ = lower.transpose().solve(tmp);
}

GpModel::Posterior GpModel::posterior(const Eigen::VectorXd& q) const {
  check_vector(q, dim_, "GpModel::posterior: q");
  if (n_ == 0) {
    return {target_mean_, target_scale_ * std::sqrt(params_.signal_variance)};
  }
  Eigen::VectorXd k(n_);
  for (int i = 0; i < n_; ++i) k[i] = rbf_kernel(q, xs_[i], params_);
  const double mean_std = k.dot(alpha_);
  Eigen::VectorXd v =
      chol_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(k);
  double var = params_.signal_variance - v.squaredNorm();
  if (var < 0.0) var = 0.0;
  return {target_scale_ * mean_std + target_mean_,
          target_scale_ * std::sqrt(var)};
}

}  // namespace edgegate
