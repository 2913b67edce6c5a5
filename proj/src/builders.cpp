#include "orthoplex/builders.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace orthoplex {

void check_orthoplex_regime(int d, int n) {
  if (n < d + 2 || n > 2 * d) {
    std::ostringstream msg;
    msg << "(d, n) = (" << d << ", " << n << ") is outside d+2 <= n <= 2d";
    throw RegimeError(msg.str());
  }
}

SphericalConfig build_simplex(int q, int d) {
  if (q < 2) throw ArgumentError("simplex needs at least 2 points");
  if (q > d + 1) {
    std::ostringstream msg;
    msg << "a " << q << "-point simplex needs ambient dimension >= " << q - 1;
    throw DimensionError(msg.str());
  }

  // Rows of I - J/q, normalized, have the simplex Gram already but live in
  // the hyperplane 1^perp of R^q. Reduce to q-1 coordinates against an
  // orthonormal basis of that hyperplane built by Gram-Schmidt (with one
  // re-orthogonalization pass) from the first q-1 rows.
  Eigen::MatrixXd centered = Eigen::MatrixXd::Identity(q, q);
  centered.array() -= 1.0 / q;

  Eigen::MatrixXd basis(q - 1, q);
  for (int k = 0; k < q - 1; ++k) {
    Eigen::VectorXd v = centered.row(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        v -= basis.row(j).dot(v) * basis.row(j).transpose();
      }
    }
    basis.row(k) = v / v.norm();
  }

  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(q, d);
  for (int i = 0; i < q; ++i) {
    Eigen::VectorXd u = centered.row(i) / centered.row(i).norm();
    rows.row(i).head(q - 1) = basis * u;
  }
  return SphericalConfig::from_rows(std::move(rows)).renormalized();
}

SphericalConfig build_orthoplex_subset(int d, int n) {
  check_orthoplex_regime(d, n);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, d);
  int r = 0;
  for (int axis = 0; axis < n - d; ++axis) {
    rows(r++, axis) = 1.0;
    rows(r++, axis) = -1.0;
  }
  for (int axis = n - d; axis < d; ++axis) {
    rows(r++, axis) = 1.0;
  }
  return SphericalConfig::from_rows(std::move(rows));
}

DimensionTuple low_entropy_tuple(int d, int n) {
  check_orthoplex_regime(d, n);
  std::vector<int> parts;
  parts.push_back(2 * d - n + 1);
  for (int i = 1; i < n - d; ++i) parts.push_back(1);
  return DimensionTuple::from_parts(std::move(parts));
}

DimensionTuple high_entropy_tuple(int d, int n) {
  check_orthoplex_regime(d, n);
  const int l = n - d;
  const int small = d / l;
  const int big_count = d % l;
  std::vector<int> parts;
  for (int i = 0; i < big_count; ++i) parts.push_back(small + 1);
  for (int i = big_count; i < l; ++i) parts.push_back(small);
  return DimensionTuple::from_parts(std::move(parts));
}

SphericalConfig build_tuple_code(const DimensionTuple& tuple) {
  std::vector<SphericalConfig> blocks;
  blocks.reserve(tuple.parts().size());
  for (int part : tuple.parts()) {
    blocks.push_back(build_simplex(part + 1, part));
  }
  return direct_sum(blocks);
}

std::pair<SphericalConfig, DimensionTuple> build_entropy_code(int d, int n,
                                                              EntropyKind kind) {
  DimensionTuple tuple =
      kind == EntropyKind::low ? low_entropy_tuple(d, n) : high_entropy_tuple(d, n);
  return {build_tuple_code(tuple), tuple};
}

SphericalConfig direct_sum(const std::vector<SphericalConfig>& blocks) {
  if (blocks.empty()) throw ArgumentError("direct_sum needs at least one block");
  int total_dim = 0;
  int total_points = 0;
  for (const auto& block : blocks) {
    total_dim += block.dim();
    total_points += block.size();
  }
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(total_points, total_dim);
  int row_offset = 0;
  int col_offset = 0;
  for (const auto& block : blocks) {
    rows.block(row_offset, col_offset, block.size(), block.dim()) = block.vectors();
    row_offset += block.size();
    col_offset += block.dim();
  }
  return SphericalConfig::from_rows(std::move(rows));
}

namespace {

Eigen::MatrixXd random_unit_rows(int rows, int d, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd out(rows, d);
  for (int i = 0; i < rows; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j < d; ++j) out(i, j) = gauss(engine);
      norm = out.row(i).norm();
    } while (norm < 1e-12);
    out.row(i) /= norm;
  }
  return out;
}

}  // namespace

SphericalConfig random_config(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw ArgumentError("random_config needs d >= 1 and n >= 1");
  std::mt19937_64 engine(seed);
  return SphericalConfig::from_rows(random_unit_rows(n, d, engine));
}

FeatureSet random_feature_set(int d, int n, int m, std::uint64_t seed) {
  if (d < 1 || n < 1 || m < 1) {
    throw ArgumentError("random_feature_set needs d, n, m >= 1");
  }
  std::mt19937_64 engine(seed);
  Eigen::MatrixXd weights = random_unit_rows(n, d, engine);
  Eigen::MatrixXd features = random_unit_rows(n * m, d, engine);
  return FeatureSet::from_parts(SphericalConfig::from_rows(std::move(weights)),
                                std::move(features), m);
}

}  // namespace orthoplex
