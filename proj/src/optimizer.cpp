#include "orthoplex/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "orthoplex/builders.hpp"
#include "orthoplex/geometry.hpp"
#include "orthoplex/loss.hpp"

namespace orthoplex {

namespace {

void renormalize_rows(Eigen::MatrixXd& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    rows.row(i) /= rows.row(i).norm();
  }
}

}  // namespace

OptimizerState optimize(const FeatureSet& init, double tau, int max_iters,
                        double grad_tol, const StepRule& rule) {
  if (max_iters < 1) throw ArgumentError("max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw ArgumentError("grad_tol must be positive");

  const int m = init.m();
  Eigen::MatrixXd weights = init.weights().vectors();
  Eigen::MatrixXd features = init.features();

  double loss = ce_loss_raw(weights, features, m, tau);
  GradientPair grad = ce_gradient_raw(weights, features, m, tau);
  double step = rule.initial_step;
  double grad_norm = 0.0;
  int iter = 0;

  std::vector<TracePoint> history;
  history.reserve(std::min(max_iters + 1, 1 << 20));

  for (; iter < max_iters; ++iter) {
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "non-finite loss at iteration " << iter;
      throw DivergenceError(msg.str());
    }
    grad_norm = std::sqrt(grad.riemannian_weights.squaredNorm() +
                          grad.riemannian_features.squaredNorm());
    history.push_back({loss, grad_norm});
    if (grad_norm < grad_tol) break;

    const double decrease_scale = grad_norm * grad_norm;
    double alpha = step;
    bool accepted = false;
    Eigen::MatrixXd next_w, next_h;
    double next_loss = loss;
    for (int bt = 0; bt <= rule.max_backtracks; ++bt) {
      next_w = weights - alpha * grad.riemannian_weights;
      next_h = features - alpha * grad.riemannian_features;
      renormalize_rows(next_w);
      renormalize_rows(next_h);
      next_loss = ce_loss_raw(next_w, next_h, m, tau);
      if (std::isfinite(next_loss) &&
          next_loss <= loss - rule.armijo * alpha * decrease_scale) {
        accepted = true;
        break;
      }
      alpha *= rule.shrink;
    }
    if (!accepted) break;  // no admissible step left at this scale

    weights = std::move(next_w);
    features = std::move(next_h);
    loss = next_loss;
    grad = ce_gradient_raw(weights, features, m, tau);
    step = std::min(rule.max_step, std::max(alpha * rule.growth, 1e-300));
  }

  if (iter == max_iters) {
    grad_norm = std::sqrt(grad.riemannian_weights.squaredNorm() +
                          grad.riemannian_features.squaredNorm());
    history.push_back({loss, grad_norm});
  }

  OptimizerState out{
      FeatureSet::from_parts(SphericalConfig::from_rows(std::move(weights)),
                             std::move(features), m),
      iter, loss, grad_norm, std::move(history)};
  return out;
}

double gram_block_error(const SphericalConfig& weights, const DimensionTuple& tuple,
                        double edge_threshold) {
  const int n = weights.size();
  if (n != tuple.sum() + tuple.length()) return 2.0;

  const Eigen::MatrixXd gram = weights.gram();
  const auto components = gram_components(gram, edge_threshold);

  // Batch-to-block matching: a component can only play the role of a block
  // of the same size, and within a block the ideal Gram is exchangeable, so
  // size multiset equality decides feasibility.
  std::map<int, int> component_sizes, block_sizes;
  for (const auto& c : components) component_sizes[static_cast<int>(c.size())]++;
  for (int part : tuple.parts()) block_sizes[part + 1]++;
  if (component_sizes != block_sizes) return 2.0;

  std::vector<int> component_of(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int idx : components[c]) component_of[idx] = static_cast<int>(c);
  }
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double target;
      if (i == j) {
        target = 1.0;
      } else if (component_of[i] == component_of[j]) {
        target = -1.0 / (static_cast<double>(components[component_of[i]].size()) - 1.0);
      } else {
        target = 0.0;
      }
      err = std::max(err, std::abs(gram(i, j) - target));
    }
  }
  return err;
}

CollapseMetrics collapse_metrics(const OptimizerState& state,
                                 const DimensionTuple& reference_tuple) {
  const FeatureSet& wh = state.iterate;
  const int n = wh.classes();
  const int d = wh.dim();
  const int m = wh.m();
  if (n != reference_tuple.sum() + reference_tuple.length() ||
      d != reference_tuple.sum()) {
    std::ostringstream msg;
    msg << "reference tuple " << reference_tuple.label()
        << " is inconsistent with (d, n) = (" << d << ", " << n << ")";
    throw ArgumentError(msg.str());
  }

  CollapseMetrics out;
  double gap = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      gap = std::max(
          gap, (wh.feature(k, i) - wh.weights().point(k)).norm());
    }
  }
  out.duality_gap = gap;

  double var = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < m; ++i) mean += wh.feature(k, i);
    mean /= m;
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += (wh.feature(k, i) - mean).squaredNorm();
    var += v / m;
  }
  out.within_class_var = var / n;

  out.gram_error_low = gram_block_error(wh.weights(), low_entropy_tuple(d, n));
  out.gram_error_high = gram_block_error(wh.weights(), high_entropy_tuple(d, n));
  return out;
}

}  // namespace orthoplex
