#pragma once

#include <Eigen/Dense>
#include <vector>

#include "orthoplex/types.hpp"

namespace orthoplex {

// Maximum off-diagonal Gram entry.
double coherence(const SphericalConfig& x);

struct HullDistanceResult {
  double distance = 0.0;       // ||query - witness||
  Eigen::VectorXd witness;     // nearest point of the hull
  Eigen::VectorXd weights;     // convex coefficients over the generators
  double gap = 0.0;            // Frank-Wolfe duality gap at termination
  int iterations = 0;
};

// Distance from query to conv(rows of generators), solved as a min-norm-point
// problem over the translated generators.
HullDistanceResult hull_distance(const Eigen::VectorXd& query,
                                 const Eigen::MatrixXd& generators);
HullDistanceResult hull_distance(const Eigen::VectorXd& query,
                                 const SphericalConfig& generators);

struct MarginResult {
  double margin = 0.0;
  Eigen::VectorXd distances;  // per-point distance to the others' hull
};

MarginResult margin(const SphericalConfig& x);

struct RadonPartition {
  std::vector<int> side_a;
  std::vector<int> side_b;
  Eigen::VectorXd radon_point;
  Eigen::VectorXd coefficients;  // the affine dependence lambda
};

// Nonzero lambda with sum lambda_i x_i = 0 and sum lambda_i = 0; sides split
// by sign (exact zeros join side_a), radon_point = positive-side average.
RadonPartition radon_partition(const SphericalConfig& x);

struct RattlerReport {
  std::vector<int> softmax;
  std::vector<int> tammes;
};

RattlerReport find_rattlers(const SphericalConfig& x, double rattler_tol = 1e-7);

struct BatchDecomposition {
  std::vector<int> s0;
  std::vector<std::vector<int>> batches;
  std::vector<int> ranks;  // span dimension per batch
};

// Structure decomposition of a zero-coherence code: connected components of
// the |Gram| > tol graph, full-rank components merged into s0, rank = size-1
// components kept as simplex batches.
BatchDecomposition orthoplex_decompose(const SphericalConfig& x, double tol = 1e-8);

// Connected components of the |Gram| > threshold graph, each sorted, ordered
// by smallest member. Shared by the decomposition and the collapse metrics.
std::vector<std::vector<int>> gram_components(const Eigen::MatrixXd& gram,
                                              double threshold);

}  // namespace orthoplex
