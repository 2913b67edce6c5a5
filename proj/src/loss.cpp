#include "orthoplex/loss.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace orthoplex {

namespace {

constexpr double kMinCeTau = 1e-3;

void check_tau(double tau) {
  if (!(tau > 0.0)) throw ArgumentError("temperature must be positive");
}

}  // namespace

LossParams::LossParams(double tau_, double c_) : tau(tau_), c(c_) {
  check_tau(tau);
  if (!(c > 0.0)) throw ArgumentError("batch constant c must be positive");
}

double ce_loss_raw(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& features,
                   int m, double tau) {
  check_tau(tau);
  if (tau < kMinCeTau) {
    throw ArgumentError("ce_loss supports tau >= 1e-3; use the closed forms below that");
  }
  const int n = static_cast<int>(weights.rows());
  if (m < 1 || features.rows() != static_cast<Eigen::Index>(n) * m) {
    throw ArgumentError("feature row count must be n*m");
  }

  // logits(k*m+i, j) = <w_j, h_{k,i}> / tau
  const Eigen::MatrixXd logits = (features * weights.transpose()) / tau;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      const auto row = logits.row(k * m + i);
      const double row_max = row.maxCoeff();
      double sum_exp = 0.0;
      for (int j = 0; j < n; ++j) sum_exp += std::exp(row(j) - row_max);
      total += std::log(sum_exp) + row_max - row(k);
    }
  }
  return total / (static_cast<double>(m) * n);
}

double ce_loss(const FeatureSet& wh, double tau) {
  return ce_loss_raw(wh.weights().vectors(), wh.features(), wh.m(), tau);
}

namespace {

// log(n - x - 1 + e^beta + x e^{-beta/x}) = beta + log1p(eps(x)) with
// eps = (n-x-1)e^{-beta} + x e^{-beta/x - beta}; eps stays tiny for large
// beta instead of overflowing.
double log_g(int n, double beta, double x) {
  const double eps = (n - x - 1.0) * std::exp(-beta) + x * std::exp(-beta / x - beta);
  return beta + std::log1p(eps);
}

double g_scaled_inverse(int n, double beta, double x) {
  // e^{-beta} / (1 + eps) = 1 / g
  const double eps = (n - x - 1.0) * std::exp(-beta) + x * std::exp(-beta / x - beta);
  return std::exp(-beta) / (1.0 + eps);
}

void check_f_domain(int n, double tau, double x) {
  check_tau(tau);
  if (n < 3) throw ArgumentError("f is defined for n >= 3");
  if (!(x >= 1.0 && x <= n - 1.0)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside the domain [1, " << n - 1 << "]";
    throw ArgumentError(msg.str());
  }
}

}  // namespace

double ce_selfdual_closed(const DimensionTuple& tuple, int n, double tau) {
  check_tau(tau);
  if (n != tuple.sum() + tuple.length()) {
    std::ostringstream msg;
    msg << "tuple " << tuple.label() << " describes n = " << tuple.sum() + tuple.length()
        << " points, not " << n;
    throw ArgumentError(msg.str());
  }
  const double beta = 1.0 / tau;
  // (1/n) sum (d_i+1)(beta + log1p(eps_i)) - beta; the beta terms cancel
  // exactly because sum (d_i+1) = n.
  double total = 0.0;
  for (int part : tuple.parts()) {
    const double x = part;
    const double eps =
        (n - x - 1.0) * std::exp(-beta) + x * std::exp(-beta / x - beta);
    total += (x + 1.0) * std::log1p(eps);
  }
  return total / n;
}

double hardmax_loss(const FeatureSet& wh, HardmaxConvention convention) {
  const int n = wh.classes();
  if (n < 2) throw ArgumentError("hardmax loss needs at least 2 classes");
  const int m = wh.m();
  const Eigen::MatrixXd inner = wh.features() * wh.weights().vectors().transpose();
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      const auto row = inner.row(k * m + i);
      for (int kp = 0; kp < n; ++kp) {
        if (kp == k) continue;
        const double value = convention == HardmaxConvention::negated
                                 ? row(kp) - row(k)
                                 : row(k) - row(kp);
        best = std::max(best, value);
      }
    }
  }
  return best;
}

double l_tau_c(const SphericalConfig& x, double tau, double c) {
  LossParams params(tau, c);
  const int n = x.size();
  if (n < 2) throw ArgumentError("l_tau_c needs at least 2 points");
  const Eigen::MatrixXd gram = x.gram();
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    double sum_exp = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != k) sum_exp += std::exp(gram(j, k) / tau);
    }
    total += std::log(params.c + sum_exp);
  }
  return total;
}

double f_eval(int n, double tau, double x) {
  check_f_domain(n, tau, x);
  return (x + 1.0) * log_g(n, 1.0 / tau, x);
}

double f_d1(int n, double tau, double x) {
  check_f_domain(n, tau, x);
  const double beta = 1.0 / tau;
  const double u = beta / x;
  const double gp = -1.0 + (1.0 + u) * std::exp(-u);
  return log_g(n, beta, x) + (x + 1.0) * gp * g_scaled_inverse(n, beta, x);
}

double f_curvature(int n, double tau, double x) {
  check_f_domain(n, tau, x);
  const double beta = 1.0 / tau;
  const double u = beta / x;
  const double eu = std::exp(-u);
  const double gp = -1.0 + (1.0 + u) * eu;
  const double gpp = u * u * eu / x;
  return (x + 1.0) * gpp + 2.0 * gp -
         (x + 1.0) * gp * gp * g_scaled_inverse(n, beta, x);
}

double f_d2(int n, double tau, double x) {
  return f_curvature(n, tau, x) * g_scaled_inverse(n, 1.0 / tau, x);
}

GradientPair ce_gradient_raw(const Eigen::MatrixXd& weights,
                             const Eigen::MatrixXd& features, int m, double tau) {
  check_tau(tau);
  const int n = static_cast<int>(weights.rows());
  const int d = static_cast<int>(weights.cols());
  if (m < 1 || features.rows() != static_cast<Eigen::Index>(n) * m) {
    throw ArgumentError("feature row count must be n*m");
  }

  GradientPair out;
  out.weights = Eigen::MatrixXd::Zero(n, d);
  out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n) * m, d);

  const Eigen::MatrixXd logits = (features * weights.transpose()) / tau;
  const double inv = 1.0 / (tau * m * n);
  Eigen::VectorXd probs(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      const int row = k * m + i;
      const double row_max = logits.row(row).maxCoeff();
      double sum_exp = 0.0;
      for (int j = 0; j < n; ++j) {
        probs(j) = std::exp(logits(row, j) - row_max);
        sum_exp += probs(j);
      }
      probs /= sum_exp;
      probs(k) -= 1.0;  // dL/dlogit for this sample, times (tau m n)

      out.features.row(row) = inv * (probs.transpose() * weights);
      for (int j = 0; j < n; ++j) {
        out.weights.row(j) += inv * probs(j) * features.row(row);
      }
    }
  }

  auto project = [](const Eigen::MatrixXd& base, const Eigen::MatrixXd& grad) {
    Eigen::MatrixXd tangent = grad;
    for (Eigen::Index r = 0; r < base.rows(); ++r) {
      tangent.row(r) -= base.row(r).dot(grad.row(r)) * base.row(r);
    }
    return tangent;
  };
  out.riemannian_weights = project(weights, out.weights);
  out.riemannian_features = project(features, out.features);
  return out;
}

GradientPair ce_gradient(const FeatureSet& wh, double tau) {
  return ce_gradient_raw(wh.weights().vectors(), wh.features(), wh.m(), tau);
}

}  // namespace orthoplex
