#include "orthoplex/types.hpp"

#include <cmath>
#include <sstream>

namespace orthoplex {

namespace {

void check_unit_rows(const Eigen::MatrixXd& rows, double unit_tol, const char* what) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    double norm = rows.row(i).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > unit_tol) {
      std::ostringstream msg;
      msg << what << " row " << i << " has norm " << norm
          << " (unit tolerance " << unit_tol << ")";
      throw ArgumentError(msg.str());
    }
  }
}

}  // namespace

SphericalConfig SphericalConfig::from_rows(Eigen::MatrixXd rows, double unit_tol) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw ArgumentError("configuration needs at least one point and one dimension");
  }
  check_unit_rows(rows, unit_tol, "config");
  return SphericalConfig(std::move(rows));
}

SphericalConfig SphericalConfig::renormalized() const {
  Eigen::MatrixXd rows = rows_;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    double norm = rows.row(i).norm();
    if (norm == 0.0 || !std::isfinite(norm)) {
      throw ArgumentError("cannot renormalize a zero or non-finite row");
    }
    rows.row(i) /= norm;
  }
  return SphericalConfig(std::move(rows));
}

FeatureSet FeatureSet::from_parts(SphericalConfig weights, Eigen::MatrixXd features,
                                  int m, double unit_tol) {
  if (m < 1) throw ArgumentError("m must be >= 1");
  if (features.rows() != static_cast<Eigen::Index>(weights.size()) * m ||
      features.cols() != weights.dim()) {
    throw ArgumentError("feature array shape must be (n*m) x d");
  }
  check_unit_rows(features, unit_tol, "feature");
  return FeatureSet(std::move(weights), std::move(features), m);
}

FeatureSet FeatureSet::self_dual(const SphericalConfig& weights, int m) {
  if (m < 1) throw ArgumentError("m must be >= 1");
  const int n = weights.size();
  Eigen::MatrixXd features(static_cast<Eigen::Index>(n) * m, weights.dim());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      features.row(static_cast<Eigen::Index>(k) * m + i) = weights.vectors().row(k);
    }
  }
  return FeatureSet(weights, std::move(features), m);
}

DimensionTuple DimensionTuple::from_parts(std::vector<int> parts) {
  if (parts.empty()) throw ArgumentError("dimension tuple must have at least one part");
  int sum = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw ArgumentError("dimension tuple parts must be >= 1");
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw ArgumentError("dimension tuple parts must be non-increasing");
    }
    sum += parts[i];
  }
  return DimensionTuple(std::move(parts), sum);
}

DimensionTuple DimensionTuple::parse(const std::string& label) {
  std::vector<int> parts;
  std::stringstream in(label);
  std::string piece;
  while (std::getline(in, piece, '+')) {
    try {
      parts.push_back(std::stoi(piece));
    } catch (const std::exception&) {
      throw ArgumentError("cannot parse tuple label '" + label + "'");
    }
  }
  return from_parts(std::move(parts));
}

std::string DimensionTuple::label() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out << '+';
    out << parts_[i];
  }
  return out.str();
}

}  // namespace orthoplex
