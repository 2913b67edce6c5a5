#pragma once

#include <vector>

#include "orthoplex/types.hpp"

namespace orthoplex {

// Backtracking line-search policy. The step is allowed to grow well past 1:
// at small temperatures the landscape is an exponentially flat plateau and
// unit-capped steps stall far from stationarity.
struct StepRule {
  double initial_step = 1.0;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 80;
  double growth = 2.0;
  double max_step = 1e8;
};

struct TracePoint {
  double loss = 0.0;
  double grad_norm = 0.0;
};

struct OptimizerState {
  FeatureSet iterate;
  int step = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  std::vector<TracePoint> history;
};

// Riemannian descent on the product of spheres: Euclidean gradient, tangent
// projection, Armijo backtracking, row renormalization as the retraction.
// Deterministic given the inputs. Stops at grad_norm < grad_tol, at
// max_iters, or when no positive step satisfies the Armijo test.
OptimizerState optimize(const FeatureSet& init, double tau, int max_iters,
                        double grad_tol, const StepRule& rule = StepRule{});

struct CollapseMetrics {
  double duality_gap = 0.0;       // max_{k,i} ||h_{k,i} - w_k||
  double within_class_var = 0.0;  // mean over k of Var_i h_{k,i}
  double gram_error_low = 2.0;    // vs the ideal low-entropy block Gram
  double gram_error_high = 2.0;   // vs the ideal high-entropy block Gram
};

// Max entrywise deviation of the weight Gram from the tuple's ideal block
// Gram under the best batch-to-block matching; 2 when the thresholded
// component sizes cannot be matched to the tuple at all.
double gram_block_error(const SphericalConfig& weights, const DimensionTuple& tuple,
                        double edge_threshold = 0.2);

// reference_tuple is validated against the iterate's (d, n); the Gram errors
// always compare against the canonical low/high tuples of that pair.
CollapseMetrics collapse_metrics(const OptimizerState& state,
                                 const DimensionTuple& reference_tuple);

}  // namespace orthoplex
