#pragma once

#include <utility>
#include <vector>

#include "orthoplex/types.hpp"

namespace orthoplex {

// All partitions of d into exactly l positive non-increasing parts, in
// reverse-lexicographic order.
std::vector<DimensionTuple> enumerate_tuples(int d, int l);

// Exhaustive argmin of ce_selfdual_closed over enumerate_tuples(d, n-d);
// ties resolve to the reverse-lexicographically first tuple.
std::pair<DimensionTuple, double> optimal_tuple(int d, int n, double tau);

struct Crossover {
  double tau;
  DimensionTuple below;
  DimensionTuple above;
};

struct PerTauRecord {
  double tau;
  std::vector<double> losses;  // one per tuple, in enumeration order
  int argmin;                  // index into the tuple list
};

struct SweepReport {
  int d = 0;
  int n = 0;
  std::vector<DimensionTuple> tuples;
  std::vector<PerTauRecord> per_tau;
  std::vector<Crossover> crossovers;  // sorted by tau
  double concavity_threshold = 0.0;
  double convexity_threshold = 0.0;
};

// Locates every tau where the argmin tuple changes: bracketing on a coarse
// grid, then bisecting the loss difference of the two adjacent argmin tuples
// down to tol.
SweepReport crossover_scan(int d, int n, double tau_lo, double tau_hi,
                           double tol = 1e-5, int grid_points = 512);

// Sign-definiteness boundaries of f'' over a 2048-point x-grid of [1, n-1],
// located by bisection in tau over [1e-3, 1e3].
double concavity_threshold(int n, double tol = 1e-5);
double convexity_threshold(int n, double tol = 1e-5);

// True when sign * f''(n, tau, x) > 0 across an x-grid of [1, n-1]; the
// 2048-point default is what the thresholds use, finer grids cross-check it.
bool curvature_sign_definite(int n, double tau, int sign, int grid_points = 2048);

}  // namespace orthoplex
