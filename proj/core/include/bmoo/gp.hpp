#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bmoo::gp {

/// Kernel: anisotropic Matern-5/2 with constant mean (handled through
/// output standardization). Hyperparameters are searched in log space.
struct GPConfig {
  double jitter = 1e-8;  ///< relative to the signal variance
  double lengthscale_min = 1e-2;  ///< normalized input units
  double lengthscale_max = 1e1;
  double variance_min = 1e-4;  ///< times the (standardized) output variance
  double variance_max = 1e4;
  int restarts = 5;
  int max_iterations = 30;        ///< quasi-Newton steps, incumbent start
  int restart_iterations = 12;    ///< quasi-Newton steps, random starts
  int large_n_threshold = 200;    ///< above this, cap iterations harder
  int large_n_iterations = 10;
  std::uint64_t seed = 0xb10cba5eULL;  ///< restart draws
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

class CholeskyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable fitted posterior for one scalar output; safe for concurrent
/// prediction. Outputs are standardized internally; predictions are
/// reported in the original units.
class GPModel {
 public:
  Prediction predict(std::span<const double> x) const;

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  bool degenerate() const { return degenerate_; }
  const std::vector<double>& lengthscales() const { return lengthscales_; }
  /// Signal variance in standardized output units.
  double signal_variance() const { return signal_variance_; }
  /// Prior (far-field) predictive variance in original output units.
  double prior_variance() const;
  double output_mean() const { return y_mean_; }
  double output_scale() const { return y_scale_; }

 private:
  friend GPModel fit_with_hyperparameters(
      const std::vector<std::vector<double>>& inputs,
      const std::vector<double>& outputs, std::span<const double> lengthscales,
      double signal_variance, const GPConfig& config);
  friend GPModel fit(const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& outputs,
                     const GPConfig& config,
                     const std::vector<double>* warm_start);

  Eigen::MatrixXd inputs_;         // n x d, deduplicated
  Eigen::VectorXd alpha_;          // (R + jI)^{-1} y_std
  Eigen::MatrixXd inverse_;        // (R + jI)^{-1}
  std::vector<double> lengthscales_;
  double signal_variance_ = 1.0;   // standardized units
  double jitter_ = 1e-8;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  bool degenerate_ = false;
};

/// Gaussian log marginal likelihood of zero-mean targets y under the
/// Matern-5/2 kernel with the given hyperparameters. Retries a failing
/// factorization with 10x jitter up to 3 times, then throws
/// CholeskyFailure.
double log_marginal_likelihood(const std::vector<std::vector<double>>& inputs,
                               const std::vector<double>& targets,
                               std::span<const double> lengthscales,
                               double signal_variance, double jitter);

/// Fits hyperparameters by multi-start quasi-Newton ascent of the marginal
/// likelihood over the configured log-space box (signal variance is
/// profiled out in closed form and clamped to its box). Duplicated inputs
/// are removed first; all-equal outputs fall back to a constant model.
/// Requires at least 2 distinct points.
GPModel fit(const std::vector<std::vector<double>>& inputs,
            const std::vector<double>& outputs, const GPConfig& config,
            const std::vector<double>* warm_start = nullptr);

/// Same model construction at fixed hyperparameters (signal variance in
/// standardized output units); used by fit() and by oracle tests.
GPModel fit_with_hyperparameters(const std::vector<std::vector<double>>& inputs,
                                 const std::vector<double>& outputs,
                                 std::span<const double> lengthscales,
                                 double signal_variance,
                                 const GPConfig& config);

}  // namespace bmoo::gp
