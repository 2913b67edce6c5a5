#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "orthoplex/errors.hpp"

namespace orthoplex {

// Unit-norm tolerance enforced at construction. Re-normalization is an
// explicit operation (renormalized()), never implicit.
inline constexpr double kUnitTol = 1e-12;

// An ordered list of n unit vectors in R^d, one per row. Immutable.
class SphericalConfig {
 public:
  static SphericalConfig from_rows(Eigen::MatrixXd rows, double unit_tol = kUnitTol);

  int dim() const { return static_cast<int>(rows_.cols()); }
  int size() const { return static_cast<int>(rows_.rows()); }
  const Eigen::MatrixXd& vectors() const { return rows_; }
  Eigen::VectorXd point(int i) const { return rows_.row(i); }
  Eigen::MatrixXd gram() const { return rows_ * rows_.transpose(); }

  // Rows scaled back to exact unit norm; the only sanctioned repair path.
  SphericalConfig renormalized() const;

 private:
  explicit SphericalConfig(Eigen::MatrixXd rows) : rows_(std::move(rows)) {}
  Eigen::MatrixXd rows_;
};

// Class weights plus m unit feature vectors per class. Feature row k*m + i
// holds the i-th example of class k.
class FeatureSet {
 public:
  static FeatureSet from_parts(SphericalConfig weights, Eigen::MatrixXd features,
                               int m, double unit_tol = kUnitTol);
  // h_{k,i} = w_k for all i.
  static FeatureSet self_dual(const SphericalConfig& weights, int m);

  const SphericalConfig& weights() const { return weights_; }
  const Eigen::MatrixXd& features() const { return features_; }
  int m() const { return m_; }
  int classes() const { return weights_.size(); }
  int dim() const { return weights_.dim(); }
  Eigen::VectorXd feature(int k, int i) const { return features_.row(k * m_ + i); }

 private:
  FeatureSet(SphericalConfig weights, Eigen::MatrixXd features, int m)
      : weights_(std::move(weights)), features_(std::move(features)), m_(m) {}
  SphericalConfig weights_;
  Eigen::MatrixXd features_;
  int m_;
};

// Non-increasing positive integers (d_1,...,d_l); sum() is the ambient
// dimension they fill, length() the number of blocks.
class DimensionTuple {
 public:
  static DimensionTuple from_parts(std::vector<int> parts);
  static DimensionTuple parse(const std::string& label);  // "3+1+1+1"

  const std::vector<int>& parts() const { return parts_; }
  int sum() const { return sum_; }
  int length() const { return static_cast<int>(parts_.size()); }
  std::string label() const;

  bool operator==(const DimensionTuple& other) const { return parts_ == other.parts_; }
  bool operator!=(const DimensionTuple& other) const { return !(*this == other); }

 private:
  explicit DimensionTuple(std::vector<int> parts, int sum)
      : parts_(std::move(parts)), sum_(sum) {}
  std::vector<int> parts_;
  int sum_ = 0;
};

}  // namespace orthoplex
