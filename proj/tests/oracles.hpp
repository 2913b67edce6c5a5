#pragma once

// Brute-force reference implementations used only by the test suites. They
// share no code path with the library solvers they check, so keep them slow
// and obvious.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>

#include "orthoplex/types.hpp"

namespace orthoplex::oracles {

struct OracleReport {
  std::string instance;
  double oracle_value = 0.0;
  double solver_value = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;

  // one JSON object per line, for CI artifacts
  std::string json_line() const;
};

OracleReport make_report(std::string instance, double oracle_value,
                         double solver_value);

// Barycentric-grid minimum of ||query - sum a_i x_i|| with grid_depth
// subdivisions, then local grid-shrinking refinement rounds. At most 5
// generators.
double hull_distance_oracle(const Eigen::VectorXd& query,
                            const Eigen::MatrixXd& generators, int grid_depth,
                            int refine_rounds = 16);

// Central finite differences of f(weights, features) in every coordinate.
struct FdGradient {
  Eigen::MatrixXd weights;
  Eigen::MatrixXd features;
};

FdGradient fd_gradient(
    const std::function<double(const Eigen::MatrixXd&, const Eigen::MatrixXd&)>& f,
    const Eigen::MatrixXd& weights, const Eigen::MatrixXd& features, double h);

// Central finite difference of a scalar function.
double fd_scalar(const std::function<double(double)>& f, double x, double h);

// Independent transcription of the self-dual block-code loss plus a linear
// scan over an independently generated partition list.
DimensionTuple tuple_argmin_oracle(int d, int n, double tau);

}  // namespace orthoplex::oracles
