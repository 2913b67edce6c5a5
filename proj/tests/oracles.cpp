#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "json.hpp"
#include "orthoplex/errors.hpp"

namespace orthoplex::oracles {

std::string OracleReport::json_line() const {
  return nlohmann::json{{"instance", instance},
                        {"oracle", oracle_value},
                        {"solver", solver_value},
                        {"abs_dev", abs_dev},
                        {"rel_dev", rel_dev}}
      .dump();
}

OracleReport make_report(std::string instance, double oracle_value,
                         double solver_value) {
  OracleReport r;
  r.instance = std::move(instance);
  r.oracle_value = oracle_value;
  r.solver_value = solver_value;
  r.abs_dev = std::abs(oracle_value - solver_value);
  const double denom = std::max(std::abs(oracle_value), std::abs(solver_value));
  r.rel_dev = denom > 0.0 ? r.abs_dev / denom : 0.0;
  return r;
}

namespace {

// Enumerates all weight vectors with components k_i / depth, sum k_i = depth.
void for_each_composition(int depth, int parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> counts(parts, 0);
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == parts - 1) {
      counts[slot] = remaining;
      fn(counts);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      counts[slot] = v;
      rec(slot + 1, remaining - v);
    }
  };
  rec(0, depth);
}

double eval_weights(const Eigen::VectorXd& query, const Eigen::MatrixXd& generators,
                    const Eigen::VectorXd& weights) {
  return (generators.transpose() * weights - query).norm();
}

}  // namespace

double hull_distance_oracle(const Eigen::VectorXd& query,
                            const Eigen::MatrixXd& generators, int grid_depth,
                            int refine_rounds) {
  const int k = static_cast<int>(generators.rows());
  if (k < 1) throw ArgumentError("oracle needs at least one generator");
  if (k > 5) throw ArgumentError("oracle limited to 5 generators");
  if (grid_depth < 2) throw ArgumentError("oracle grid_depth must be >= 2");
  if (k == 1) return (generators.row(0).transpose() - query).norm();

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_w = Eigen::VectorXd::Zero(k);
  for_each_composition(grid_depth, k, [&](const std::vector<int>& counts) {
    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) w(i) = static_cast<double>(counts[i]) / grid_depth;
    const double value = eval_weights(query, generators, w);
    if (value < best) {
      best = value;
      best_w = w;
    }
  });

  // Local refinement: a full product grid over a box around the incumbent,
  // renormalized onto the simplex, with the box shrinking each round. The
  // box must keep covering the minimizer while the incumbent walks, so the
  // shrink factor stays modest.
  double width = 4.0 / grid_depth;
  const int axis_points = 9;
  std::vector<int> digits(k, 0);
  for (int round = 0; round < refine_rounds; ++round) {
    Eigen::VectorXd lo(k), hi(k);
    for (int i = 0; i < k; ++i) {
      lo(i) = std::max(0.0, best_w(i) - width);
      hi(i) = std::min(1.0, best_w(i) + width);
    }
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      Eigen::VectorXd w(k);
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        w(i) = lo(i) + (hi(i) - lo(i)) * digits[i] / (axis_points - 1.0);
        sum += w(i);
      }
      if (sum > 0.0) {
        w /= sum;
        const double value = eval_weights(query, generators, w);
        if (value < best) {
          best = value;
          best_w = w;
        }
      }
      int carry = 0;
      while (carry < k && ++digits[carry] == axis_points) {
        digits[carry] = 0;
        ++carry;
      }
      if (carry == k) break;
    }
    width /= 3.0;
  }
  return best;
}

FdGradient fd_gradient(
    const std::function<double(const Eigen::MatrixXd&, const Eigen::MatrixXd&)>& f,
    const Eigen::MatrixXd& weights, const Eigen::MatrixXd& features, double h) {
  if (!(h > 0.0)) throw ArgumentError("fd_gradient needs h > 0");
  FdGradient out;
  out.weights.resize(weights.rows(), weights.cols());
  out.features.resize(features.rows(), features.cols());
  for (Eigen::Index r = 0; r < weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < weights.cols(); ++c) {
      Eigen::MatrixXd plus = weights, minus = weights;
      plus(r, c) += h;
      minus(r, c) -= h;
      out.weights(r, c) = (f(plus, features) - f(minus, features)) / (2.0 * h);
    }
  }
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
      Eigen::MatrixXd plus = features, minus = features;
      plus(r, c) += h;
      minus(r, c) -= h;
      out.features(r, c) = (f(weights, plus) - f(weights, minus)) / (2.0 * h);
    }
  }
  return out;
}

double fd_scalar(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

namespace {

void partitions_rec(int remaining, int slots, int max_part, std::vector<int>& acc,
                    std::vector<std::vector<int>>& out) {
  if (slots == 0) {
    if (remaining == 0) out.push_back(acc);
    return;
  }
  for (int part = std::min(max_part, remaining); part >= 1; --part) {
    if (remaining - part < slots - 1) continue;
    acc.push_back(part);
    partitions_rec(remaining - part, slots - 1, part, acc, out);
    acc.pop_back();
  }
}

}  // namespace

DimensionTuple tuple_argmin_oracle(int d, int n, double tau) {
  const int l = n - d;
  std::vector<std::vector<int>> partitions;
  std::vector<int> acc;
  partitions_rec(d, l, d, acc, partitions);

  const double beta = 1.0 / tau;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_parts;
  for (const auto& parts : partitions) {
    double value = 0.0;
    for (int part : parts) {
      const double x = part;
      value += (x + 1.0) *
               std::log(n - x - 1.0 + std::exp(beta) + x * std::exp(-beta / x));
    }
    value = value / n - beta;
    if (value < best) {
      best = value;
      best_parts = parts;
    }
  }
  return DimensionTuple::from_parts(best_parts);
}

}  // namespace orthoplex::oracles
