#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "orthoplex/builders.hpp"
#include "orthoplex/geometry.hpp"
#include "orthoplex/io.hpp"
#include "orthoplex/types.hpp"

using namespace orthoplex;

namespace {

double max_offdiag_dev(const Eigen::MatrixXd& gram, double target) {
  double dev = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i != j) dev = std::max(dev, std::abs(gram(i, j) - target));
    }
  }
  return dev;
}

}  // namespace

TEST_CASE("spherical config validates unit rows and shape") {
  Eigen::MatrixXd ok(2, 2);
  ok << 1, 0, 0, 1;
  CHECK_NOTHROW(SphericalConfig::from_rows(ok));

  Eigen::MatrixXd bad(1, 2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(SphericalConfig::from_rows(bad), ArgumentError);
  CHECK_NOTHROW(SphericalConfig::from_rows(bad, 1.0).renormalized());
}

TEST_CASE("build_simplex smallest cases") {
  SphericalConfig pair = build_simplex(2, 1);
  CHECK(pair.vectors()(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pair.vectors()(1, 0) == doctest::Approx(-1.0).epsilon(1e-14));

  SphericalConfig tetra = build_simplex(4, 3);
  CHECK(max_offdiag_dev(tetra.gram(), -1.0 / 3.0) < 1e-12);

  SphericalConfig triangle = build_simplex(3, 2);
  CHECK(max_offdiag_dev(triangle.gram(), -0.5) < 1e-12);
  CHECK(triangle.vectors().colwise().sum().norm() < 1e-12);
}

TEST_CASE("build_simplex canonical embedding and invariants") {
  for (int q = 2; q <= 10; ++q) {
    const int d = q + 2;
    SphericalConfig simplex = build_simplex(q, d);
    CHECK(max_offdiag_dev(simplex.gram(), -1.0 / (q - 1)) < 1e-12);
    CHECK(simplex.vectors().colwise().sum().norm() < 1e-12);
    // zero-padded beyond the first q-1 coordinates
    CHECK(simplex.vectors().rightCols(d - (q - 1)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("build_simplex argument errors") {
  CHECK_THROWS_AS(build_simplex(4, 2), DimensionError);
  CHECK_THROWS_AS(build_simplex(1, 5), ArgumentError);
}

TEST_CASE("build_orthoplex_subset selection and regime") {
  SphericalConfig square = build_orthoplex_subset(2, 4);
  Eigen::MatrixXd expected(4, 2);
  expected << 1, 0, -1, 0, 0, 1, 0, -1;
  CHECK((square.vectors() - expected).cwiseAbs().maxCoeff() == 0.0);

  SphericalConfig five = build_orthoplex_subset(3, 5);
  CHECK(coherence(five) == 0.0);

  SphericalConfig six = build_orthoplex_subset(4, 6);
  int minus_ones = 0;
  const Eigen::MatrixXd gram = six.gram();
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (gram(i, j) == -1.0) ++minus_ones;
    }
  }
  CHECK(minus_ones == 2);

  CHECK_THROWS_AS(build_orthoplex_subset(3, 7), RegimeError);
  CHECK_THROWS_AS(build_orthoplex_subset(4, 5), RegimeError);
}

TEST_CASE("entropy code tuples") {
  auto [low, low_tuple] = build_entropy_code(4, 6, EntropyKind::low);
  CHECK(low_tuple.parts() == std::vector<int>{3, 1});
  auto [high, high_tuple] = build_entropy_code(4, 6, EntropyKind::high);
  CHECK(high_tuple.parts() == std::vector<int>{2, 2});

  auto [sq_low, sq_low_tuple] = build_entropy_code(2, 4, EntropyKind::low);
  auto [sq_high, sq_high_tuple] = build_entropy_code(2, 4, EntropyKind::high);
  CHECK(sq_low_tuple == sq_high_tuple);
  CHECK((sq_low.vectors() - sq_high.vectors()).cwiseAbs().maxCoeff() == 0.0);

  for (int d = 2; d <= 8; ++d) {
    for (int n = d + 2; n <= 2 * d; ++n) {
      for (EntropyKind kind : {EntropyKind::low, EntropyKind::high}) {
        auto [code, tuple] = build_entropy_code(d, n, kind);
        CHECK(tuple.sum() == d);
        CHECK(tuple.length() == n - d);
        CHECK(code.size() == n);
        CHECK(code.dim() == d);
      }
    }
  }
}

TEST_CASE("entropy codes and orthoplex subsets are spherical codes") {
  for (int d = 2; d <= 7; ++d) {
    for (int n = d + 2; n <= 2 * d; ++n) {
      SphericalConfig subset = build_orthoplex_subset(d, n);
      CHECK(coherence(subset) <= 1e-12);
      CHECK(margin(subset).margin == doctest::Approx(1.0).epsilon(1e-9));
      for (EntropyKind kind : {EntropyKind::low, EntropyKind::high}) {
        SphericalConfig code = build_entropy_code(d, n, kind).first;
        CHECK(coherence(code) <= 1e-12);
        CHECK(margin(code).margin == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("direct_sum blocks") {
  SphericalConfig pair = build_simplex(2, 1);
  SphericalConfig square = direct_sum({pair, pair});
  CHECK(square.dim() == 2);
  CHECK(square.size() == 4);
  CHECK(coherence(square) == 0.0);

  SphericalConfig triangle = build_simplex(3, 2);
  SphericalConfig two_triangles = direct_sum({triangle, triangle});
  CHECK(two_triangles.dim() == 4);
  CHECK(two_triangles.size() == 6);
  CHECK(two_triangles.gram().topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);

  SphericalConfig mixed = direct_sum({build_simplex(4, 3), pair});
  CHECK(coherence(mixed) <= 0.0);
  CHECK(margin(mixed).margin == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(direct_sum({}), ArgumentError);
}

TEST_CASE("direct_sum then decompose recovers simplex blocks") {
  const std::vector<std::vector<int>> tuples = {{2, 1}, {3, 1}, {2, 2}, {1, 1, 1}};
  for (const auto& parts : tuples) {
    std::vector<SphericalConfig> blocks;
    std::vector<std::vector<int>> expected;
    int offset = 0;
    for (int p : parts) {
      blocks.push_back(build_simplex(p + 1, p));
      std::vector<int> idx;
      for (int i = 0; i <= p; ++i) idx.push_back(offset + i);
      expected.push_back(idx);
      offset += p + 1;
    }
    BatchDecomposition dec = orthoplex_decompose(direct_sum(blocks));
    CHECK(dec.s0.empty());
    CHECK(dec.batches == expected);
  }
}

TEST_CASE("random_config determinism and normalization") {
  SphericalConfig a = random_config(3, 5, 0);
  SphericalConfig b = random_config(3, 5, 0);
  CHECK((a.vectors() - b.vectors()).cwiseAbs().maxCoeff() == 0.0);

  SphericalConfig big = random_config(2, 100, 1);
  for (int i = 0; i < big.size(); ++i) {
    CHECK(std::abs(big.vectors().row(i).norm() - 1.0) < 1e-12);
  }

  CHECK(coherence(random_config(5, 8, 7)) > 0.0);
  CHECK_THROWS_AS(random_config(0, 3, 0), ArgumentError);
}

TEST_CASE("dimension tuple validation and labels") {
  CHECK_THROWS_AS(DimensionTuple::from_parts({1, 2}), ArgumentError);
  CHECK_THROWS_AS(DimensionTuple::from_parts({2, 0}), ArgumentError);
  CHECK_THROWS_AS(DimensionTuple::from_parts({}), ArgumentError);

  DimensionTuple t = DimensionTuple::from_parts({3, 1, 1, 1});
  CHECK(t.label() == "3+1+1+1");
  CHECK(DimensionTuple::parse("3+1+1+1") == t);
  CHECK(t.sum() == 6);
  CHECK(t.length() == 4);
  CHECK_THROWS_AS(DimensionTuple::parse("3+x"), ArgumentError);
}

TEST_CASE("config JSON round trip is bit exact") {
  for (int seed = 0; seed < 10; ++seed) {
    SphericalConfig config = random_config(2 + seed % 4, 4 + seed % 5, seed);
    const std::string text = config_to_json(config).dump();
    SphericalConfig back = config_from_json(nlohmann::json::parse(text));
    CHECK(back.dim() == config.dim());
    CHECK(back.size() == config.size());
    CHECK((back.vectors() - config.vectors()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("feature set JSON round trip is bit exact") {
  FeatureSet wh = random_feature_set(3, 5, 2, 42);
  const std::string text = feature_set_to_json(wh).dump();
  FeatureSet back = feature_set_from_json(nlohmann::json::parse(text));
  CHECK(back.m() == wh.m());
  CHECK((back.weights().vectors() - wh.weights().vectors()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.features() - wh.features()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("feature set shape and self_dual") {
  SphericalConfig square = build_orthoplex_subset(2, 4);
  FeatureSet sym = FeatureSet::self_dual(square, 3);
  CHECK(sym.m() == 3);
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 3; ++i) {
      CHECK((sym.feature(k, i) - square.point(k)).norm() == 0.0);
    }
  }
  Eigen::MatrixXd wrong = Eigen::MatrixXd::Identity(5, 2);
  CHECK_THROWS_AS(FeatureSet::from_parts(square, wrong, 2), ArgumentError);
}
