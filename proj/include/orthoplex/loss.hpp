#pragma once

#include <Eigen/Dense>

#include "orthoplex/types.hpp"

namespace orthoplex {

// Temperature and the additive batch constant of the batch loss.
struct LossParams {
  double tau;
  double c;
  explicit LossParams(double tau_, double c_ = 1.0);
  double beta() const { return 1.0 / tau; }
};

// Mean softmax cross-entropy at temperature tau over all (class, example)
// pairs, computed with per-sample max subtraction. Temperatures below 1e-3
// are rejected; use the closed forms for that range.
double ce_loss(const FeatureSet& wh, double tau);

// Same loss on raw arrays (weights n x d, features (n*m) x d) without unit
// checks; shared by the gradient checkers and the optimizer inner loop.
double ce_loss_raw(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& features,
                   int m, double tau);

// (1/n) sum_i (d_i+1) log(n-(d_i+1)+e^{1/tau}+d_i e^{-1/(tau d_i)}) - 1/tau,
// the self-dual cross-entropy of the tuple's block code; stable for any
// tau > 0 via log1p against the e^{1/tau} term.
double ce_selfdual_closed(const DimensionTuple& tuple, int n, double tau);

enum class HardmaxConvention {
  negated,  // max <w_{k'} - w_k, h_{k,i}>  (default)
  printed,  // max <w_k - w_{k'}, h_{k,i}>
};

double hardmax_loss(const FeatureSet& wh,
                    HardmaxConvention convention = HardmaxConvention::negated);

// sum_k log(c + sum_{j != k} exp(<x_j, x_k>/tau)).
double l_tau_c(const SphericalConfig& x, double tau, double c);

// f(x) = (x+1) log(n-x-1+e^{1/tau}+x e^{-1/(tau x)}) on [1, n-1], with its
// analytic first and second derivatives and the curvature numerator
// Q = g * f'' (finite even when g overflows the exponent range).
double f_eval(int n, double tau, double x);
double f_d1(int n, double tau, double x);
double f_d2(int n, double tau, double x);
double f_curvature(int n, double tau, double x);

struct GradientPair {
  Eigen::MatrixXd weights;              // n x d
  Eigen::MatrixXd features;             // (n*m) x d
  Eigen::MatrixXd riemannian_weights;   // tangent-projected
  Eigen::MatrixXd riemannian_features;
};

GradientPair ce_gradient(const FeatureSet& wh, double tau);
GradientPair ce_gradient_raw(const Eigen::MatrixXd& weights,
                             const Eigen::MatrixXd& features, int m, double tau);

}  // namespace orthoplex
