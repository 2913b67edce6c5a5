#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orthoplex/types.hpp"

namespace orthoplex {

// Throws RegimeError unless d+2 <= n <= 2d.
void check_orthoplex_regime(int d, int n);

// Origin-centered regular simplex: q unit vectors in R^d with pairwise inner
// product -1/(q-1), occupying the first q-1 coordinates.
SphericalConfig build_simplex(int q, int d);

// Deterministic subset of {±e_1,...,±e_d}: ±e_1..±e_{n-d}, then
// e_{n-d+1}..e_d. Coherence is exactly 0.
SphericalConfig build_orthoplex_subset(int d, int n);

enum class EntropyKind { low, high };

DimensionTuple low_entropy_tuple(int d, int n);   // (2d-n+1, 1, ..., 1)
DimensionTuple high_entropy_tuple(int d, int n);  // balanced parts, l = n-d

// Orthogonal direct sum of build_simplex(d_i+1, d_i) blocks for the kind's
// tuple; blocks occupy consecutive coordinate ranges.
std::pair<SphericalConfig, DimensionTuple> build_entropy_code(int d, int n,
                                                              EntropyKind kind);

// Direct sum of simplex blocks for an arbitrary tuple (ambient dim = sum).
SphericalConfig build_tuple_code(const DimensionTuple& tuple);

// Blocks embedded in consecutive coordinate ranges, input order; cross-block
// inner products are exactly zero.
SphericalConfig direct_sum(const std::vector<SphericalConfig>& blocks);

// Rows are independent standard normal vectors normalized to unit length;
// deterministic given seed.
SphericalConfig random_config(int d, int n, std::uint64_t seed);

// Random weights and features from one seed stream (weights first).
FeatureSet random_feature_set(int d, int n, int m, std::uint64_t seed);

}  // namespace orthoplex
