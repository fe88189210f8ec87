#include "bmoo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmoo/rng.hpp"

namespace bmoo::gp {

namespace {

constexpr double kSqrt5 = 2.23606797749979;
constexpr double kLog2Pi = 1.8378770664093453;

double matern52(double r) {
  return (1.0 + kSqrt5 * r + 5.0 / 3.0 * r * r) * std::exp(-kSqrt5 * r);
}

/// d k / d log(lengthscale_k) = weight(r) * (squared scaled diff in dim k).
double matern52_log_ls_weight(double r) {
  return 5.0 / 3.0 * (1.0 + kSqrt5 * r) * std::exp(-kSqrt5 * r);
}

Eigen::LLT<Eigen::MatrixXd> factor_with_retry(const Eigen::MatrixXd& corr,
                                              double jitter,
                                              double* used_jitter) {
  double j = jitter;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::MatrixXd a = corr;
    a.diagonal().array() += j;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      if (used_jitter != nullptr) *used_jitter = j;
      return llt;
    }
    j *= 10.0;
  }
  throw CholeskyFailure("kernel matrix not positive definite after 3 jitter retries");
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = n > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != d) {
      throw std::invalid_argument("gp: ragged input rows");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
  }
  return m;
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& x,
                                   std::span<const double> ls) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Eigen::MatrixXd r2 = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double inv = 1.0 / ls[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double u = (x(i, k) - x(j, k)) * inv;
        r2(i, j) += u * u;
      }
    }
  }
  Eigen::MatrixXd corr(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    corr(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = matern52(std::sqrt(r2(i, j)));
      corr(i, j) = v;
      corr(j, i) = v;
    }
  }
  return corr;
}

struct Standardization {
  double mean = 0.0;
  double scale = 1.0;
  bool degenerate = false;
};

Standardization standardize(const std::vector<double>& y) {
  Standardization s;
  const double n = static_cast<double>(y.size());
  double sum = 0.0;
  for (const double v : y) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (const double v : y) ss += (v - s.mean) * (v - s.mean);
  s.scale = y.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (!(s.scale > 1e-12 * (1.0 + std::abs(s.mean)))) {
    s.degenerate = true;
    s.scale = 1.0;
  }
  return s;
}

/// Marginal likelihood of standardized targets with the signal variance
/// profiled out analytically and clamped to its box.
class ProfiledObjective {
 public:
  ProfiledObjective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const GPConfig& cfg)
      : x_(x), y_(y), cfg_(cfg) {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    sq_diff_.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index k = 0; k < d; ++k) {
      Eigen::MatrixXd dk(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        dk(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const double u = x(i, k) - x(j, k);
          dk(i, j) = u * u;
          dk(j, i) = u * u;
        }
      }
      sq_diff_.push_back(std::move(dk));
    }
  }

  /// Returns the log marginal likelihood; fills grad (w.r.t. log
  /// lengthscales) when non-null. Returns -inf if factorization fails.
  double evaluate(std::span<const double> log_ls, Eigen::VectorXd* grad,
                  double* signal_variance) const {
    const Eigen::Index n = x_.rows();
    const Eigen::Index d = x_.cols();

    Eigen::MatrixXd r2 = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double inv_ls2 = std::exp(-2.0 * log_ls[static_cast<std::size_t>(k)]);
      r2.noalias() += inv_ls2 * sq_diff_[static_cast<std::size_t>(k)];
    }
    const Eigen::ArrayXXd r = r2.array().max(0.0).sqrt();
    const Eigen::ArrayXXd decay = (-kSqrt5 * r).exp();
    Eigen::MatrixXd corr =
        ((1.0 + kSqrt5 * r + (5.0 / 3.0) * r2.array()) * decay).matrix();

    Eigen::LLT<Eigen::MatrixXd> llt;
    try {
      llt = factor_with_retry(corr, cfg_.jitter, nullptr);
    } catch (const CholeskyFailure&) {
      return -std::numeric_limits<double>::infinity();
    }
    const Eigen::VectorXd alpha = llt.solve(y_);
    const double quad = y_.dot(alpha);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      log_det += 2.0 * std::log(llt.matrixLLT()(i, i));
    }
    const double s2_hat = quad / static_cast<double>(n);
    const double s2 = std::clamp(s2_hat, cfg_.variance_min, cfg_.variance_max);
    if (signal_variance != nullptr) *signal_variance = s2;

    const double lml = -0.5 * quad / s2 -
                       0.5 * (static_cast<double>(n) * std::log(s2) + log_det) -
                       0.5 * static_cast<double>(n) * kLog2Pi;
    if (grad != nullptr) {
      const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
      // dL/dtheta_k = 0.5 * sum_ab B_ab W_ab D_ab,k / ls_k^2 with
      // B = alpha alpha^T / s2 - A^{-1}; W is the kernel log-ls weight.
      const Eigen::ArrayXXd w = (5.0 / 3.0) * (1.0 + kSqrt5 * r) * decay;
      const Eigen::ArrayXXd c =
          ((alpha * alpha.transpose() / s2).array() - inv.array()) * w;
      grad->resize(d);
      for (Eigen::Index k = 0; k < d; ++k) {
        const double inv_ls2 =
            std::exp(-2.0 * log_ls[static_cast<std::size_t>(k)]);
        (*grad)(k) =
            0.5 * inv_ls2 *
            (c * sq_diff_[static_cast<std::size_t>(k)].array()).sum();
      }
    }
    return lml;
  }

 private:
  const Eigen::MatrixXd& x_;
  const Eigen::VectorXd& y_;
  const GPConfig& cfg_;
  std::vector<Eigen::MatrixXd> sq_diff_;
};

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

/// Box-constrained quasi-Newton ascent through a logistic reparametrization.
/// Returns the best log-lengthscales found starting from theta0.
double lbfgs_maximize(const ProfiledObjective& objective, double lo, double hi,
                      const Eigen::VectorXd& theta0, int max_iterations,
                      Eigen::VectorXd* theta_best) {
  const Eigen::Index d = theta0.size();
  const double span = hi - lo;
  auto to_theta = [&](const Eigen::VectorXd& t) {
    Eigen::VectorXd theta(d);
    for (Eigen::Index k = 0; k < d; ++k) theta(k) = lo + span * logistic(t(k));
    return theta;
  };
  auto to_t = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXd t(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double u = std::clamp((theta(k) - lo) / span, 0.02, 0.98);
      t(k) = std::log(u / (1.0 - u));
    }
    return t;
  };

  auto eval = [&](const Eigen::VectorXd& t, Eigen::VectorXd* grad_t) {
    const Eigen::VectorXd theta = to_theta(t);
    Eigen::VectorXd grad_theta;
    const double lml = objective.evaluate(
        std::span<const double>(theta.data(), static_cast<std::size_t>(d)),
        grad_t != nullptr ? &grad_theta : nullptr, nullptr);
    if (grad_t != nullptr) {
      grad_t->resize(d);
      if (!std::isfinite(lml)) {
        grad_t->setZero();
      } else {
        for (Eigen::Index k = 0; k < d; ++k) {
          const double s = logistic(t(k));
          (*grad_t)(k) = grad_theta(k) * span * s * (1.0 - s);
        }
      }
    }
    return lml;
  };

  Eigen::VectorXd t = to_t(theta0);
  Eigen::VectorXd grad(d);
  double f = eval(t, &grad);
  if (!std::isfinite(f)) {
    *theta_best = to_theta(t);
    return f;
  }

  constexpr int kHistory = 8;
  std::vector<Eigen::VectorXd> s_hist, y_hist;
  std::vector<double> rho_hist;

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (grad.lpNorm<Eigen::Infinity>() < 1e-6 * std::max(1.0, std::abs(f))) break;

    // Two-loop recursion on the ascent direction.
    Eigen::VectorXd q = grad;
    std::vector<double> a(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      a[static_cast<std::size_t>(i)] =
          rho_hist[static_cast<std::size_t>(i)] *
          s_hist[static_cast<std::size_t>(i)].dot(q);
      q -= a[static_cast<std::size_t>(i)] * y_hist[static_cast<std::size_t>(i)];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      const double denom = y_hist.back().squaredNorm();
      if (denom > 0.0) gamma = s_hist.back().dot(y_hist.back()) / denom;
    }
    Eigen::VectorXd direction = gamma * q;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double b = rho_hist[i] * y_hist[i].dot(direction);
      direction += (a[i] - b) * s_hist[i];
    }
    if (direction.dot(grad) <= 0.0) direction = grad;  // fall back to ascent

    double step = 1.0;
    const double slope = direction.dot(grad);
    double f_new = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd t_new;
    bool accepted = false;
    for (int ls_iter = 0; ls_iter < 25; ++ls_iter) {
      t_new = t + step * direction;
      f_new = eval(t_new, nullptr);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd grad_new(d);
    eval(t_new, &grad_new);
    const Eigen::VectorXd s_vec = t_new - t;
    const Eigen::VectorXd y_vec = grad - grad_new;  // ascent: sign-flipped
    const double sy = s_vec.dot(y_vec);
    if (sy > 1e-12) {
      s_hist.push_back(s_vec);
      y_hist.push_back(y_vec);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kHistory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }
    const double improvement = f_new - f;
    t = t_new;
    f = f_new;
    grad = grad_new;
    if (improvement < 1e-7 * std::max(1.0, std::abs(f))) break;
  }
  *theta_best = to_theta(t);
  return f;
}

struct DedupedData {
  std::vector<std::vector<double>> inputs;
  std::vector<double> outputs;
};

DedupedData dedupe(const std::vector<std::vector<double>>& inputs,
                   const std::vector<double>& outputs) {
  DedupedData out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    bool duplicate = false;
    for (const auto& kept : out.inputs) {
      if (kept == inputs[i]) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      out.inputs.push_back(inputs[i]);
      out.outputs.push_back(outputs[i]);
    }
  }
  return out;
}

}  // namespace

double GPModel::prior_variance() const {
  if (degenerate_) return 0.0;
  return y_scale_ * y_scale_ * signal_variance_ * (1.0 + jitter_);
}

Prediction GPModel::predict(std::span<const double> x) const {
  if (degenerate_) return {y_mean_, 0.0};
  const Eigen::Index n = inputs_.rows();
  const Eigen::Index d = inputs_.cols();
  if (static_cast<Eigen::Index>(x.size()) != d) {
    throw std::invalid_argument("gp predict: dimension mismatch");
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r2 = 0.0;
    bool coincides = true;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double diff = x[static_cast<std::size_t>(k)] - inputs_(i, k);
      if (diff != 0.0) coincides = false;
      const double u = diff / lengthscales_[static_cast<std::size_t>(k)];
      r2 += u * u;
    }
    // The jitter acts as a white-noise kernel component, so a test point
    // that coincides with a training input correlates fully with it.
    v(i) = coincides ? 1.0 + jitter_ : matern52(std::sqrt(r2));
  }
  const double mean_std = v.dot(alpha_);
  const double quad = v.dot(inverse_.selfadjointView<Eigen::Lower>() * v);
  const double var_std =
      std::max(0.0, signal_variance_ * (1.0 + jitter_ - quad));
  return {y_mean_ + y_scale_ * mean_std,
          y_scale_ * y_scale_ * var_std};
}

double log_marginal_likelihood(const std::vector<std::vector<double>>& inputs,
                               const std::vector<double>& targets,
                               std::span<const double> lengthscales,
                               double signal_variance, double jitter) {
  if (inputs.size() != targets.size() || inputs.empty()) {
    throw std::invalid_argument("lml: inputs/targets size mismatch");
  }
  const Eigen::MatrixXd x = to_matrix(inputs);
  const Eigen::MatrixXd corr = correlation_matrix(x, lengthscales);
  const Eigen::LLT<Eigen::MatrixXd> llt =
      factor_with_retry(corr, jitter, nullptr);
  Eigen::VectorXd y(static_cast<Eigen::Index>(targets.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = targets[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd alpha = llt.solve(y);
  const double n = static_cast<double>(targets.size());
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    log_det += 2.0 * std::log(llt.matrixLLT()(i, i));
  }
  return -0.5 * y.dot(alpha) / signal_variance -
         0.5 * (n * std::log(signal_variance) + log_det) - 0.5 * n * kLog2Pi;
}

GPModel fit_with_hyperparameters(const std::vector<std::vector<double>>& inputs,
                                 const std::vector<double>& outputs,
                                 std::span<const double> lengthscales,
                                 double signal_variance,
                                 const GPConfig& config) {
  const DedupedData data = dedupe(inputs, outputs);
  if (data.inputs.size() < 2) {
    throw std::invalid_argument("gp fit requires >= 2 distinct points");
  }
  GPModel model;
  model.inputs_ = to_matrix(data.inputs);
  model.lengthscales_.assign(lengthscales.begin(), lengthscales.end());
  const Standardization st = standardize(data.outputs);
  model.y_mean_ = st.mean;
  model.y_scale_ = st.scale;
  model.degenerate_ = st.degenerate;
  if (model.degenerate_) return model;

  Eigen::VectorXd y(static_cast<Eigen::Index>(data.outputs.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = (data.outputs[static_cast<std::size_t>(i)] - st.mean) / st.scale;
  }
  const Eigen::MatrixXd corr =
      correlation_matrix(model.inputs_, model.lengthscales_);
  const Eigen::LLT<Eigen::MatrixXd> llt =
      factor_with_retry(corr, config.jitter, &model.jitter_);
  model.alpha_ = llt.solve(y);
  model.inverse_ = llt.solve(
      Eigen::MatrixXd::Identity(model.inputs_.rows(), model.inputs_.rows()));
  model.signal_variance_ = signal_variance;
  return model;
}

GPModel fit(const std::vector<std::vector<double>>& inputs,
            const std::vector<double>& outputs, const GPConfig& config,
            const std::vector<double>* warm_start) {
  const DedupedData data = dedupe(inputs, outputs);
  if (data.inputs.size() < 2) {
    throw std::invalid_argument("gp fit requires >= 2 distinct points");
  }
  const Standardization st = standardize(data.outputs);
  if (st.degenerate) {
    // DegenerateData: constant-mean fallback.
    std::vector<double> unit_ls(data.inputs[0].size(), 1.0);
    return fit_with_hyperparameters(data.inputs, data.outputs, unit_ls, 1.0,
                                    config);
  }

  const Eigen::MatrixXd x = to_matrix(data.inputs);
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.outputs.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = (data.outputs[static_cast<std::size_t>(i)] - st.mean) / st.scale;
  }
  const ProfiledObjective objective(x, y, config);

  const double lo = std::log(config.lengthscale_min);
  const double hi = std::log(config.lengthscale_max);
  const Eigen::Index d = x.cols();
  const int iterations = data.inputs.size() >
                                 static_cast<std::size_t>(config.large_n_threshold)
                             ? config.large_n_iterations
                             : config.max_iterations;

  Eigen::VectorXd best_theta = Eigen::VectorXd::Zero(d);
  double best_lml = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
    Eigen::VectorXd theta0(d);
    if (restart == 0) {
      if (warm_start != nullptr &&
          warm_start->size() == static_cast<std::size_t>(d)) {
        for (Eigen::Index k = 0; k < d; ++k) {
          theta0(k) = std::clamp(
              std::log((*warm_start)[static_cast<std::size_t>(k)]), lo, hi);
        }
      } else {
        theta0.setZero();  // unit lengthscales
      }
    } else {
      Rng rng = make_stream(config.seed, Stream::gp_restarts,
                            static_cast<std::uint64_t>(restart));
      for (Eigen::Index k = 0; k < d; ++k) theta0(k) = rng.uniform(lo, hi);
    }
    Eigen::VectorXd theta;
    const double lml = lbfgs_maximize(objective, lo, hi, theta0, iterations,
                                      &theta);
    if (lml > best_lml) {
      best_lml = lml;
      best_theta = theta;
    }
  }

  double signal_variance = 1.0;
  objective.evaluate(
      std::span<const double>(best_theta.data(),
                              static_cast<std::size_t>(best_theta.size())),
      nullptr, &signal_variance);
  std::vector<double> ls(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    ls[static_cast<std::size_t>(k)] = std::exp(best_theta(k));
  }
  return fit_with_hyperparameters(data.inputs, data.outputs, ls,
                                  signal_variance, config);
}

}  // namespace bmoo::gp
