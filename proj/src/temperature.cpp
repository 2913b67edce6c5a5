#include "orthoplex/temperature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthoplex/builders.hpp"
#include "orthoplex/loss.hpp"
#include "orthoplex/parallel.hpp"

namespace orthoplex {

namespace {

void emit_partitions(int remaining, int slots, int max_part, std::vector<int>& prefix,
                     std::vector<DimensionTuple>& out) {
  if (slots == 1) {
    if (remaining >= 1 && remaining <= max_part) {
      prefix.push_back(remaining);
      out.push_back(DimensionTuple::from_parts(prefix));
      prefix.pop_back();
    }
    return;
  }
  // First part from the largest feasible value downward keeps the overall
  // order reverse-lexicographic.
  const int hi = std::min(max_part, remaining - (slots - 1));
  const int lo = (remaining + slots - 1) / slots;  // ceil: keep non-increasing feasible
  for (int part = hi; part >= lo; --part) {
    prefix.push_back(part);
    emit_partitions(remaining - part, slots - 1, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<DimensionTuple> enumerate_tuples(int d, int l) {
  if (l < 1 || l > d) {
    std::ostringstream msg;
    msg << "cannot split " << d << " into " << l << " positive parts";
    throw ArgumentError(msg.str());
  }
  std::vector<DimensionTuple> out;
  std::vector<int> prefix;
  emit_partitions(d, l, d, prefix, out);
  return out;
}

std::pair<DimensionTuple, double> optimal_tuple(int d, int n, double tau) {
  check_orthoplex_regime(d, n);
  const std::vector<DimensionTuple> tuples = enumerate_tuples(d, n - d);
  int best = 0;
  double best_loss = ce_selfdual_closed(tuples[0], n, tau);
  for (std::size_t i = 1; i < tuples.size(); ++i) {
    const double loss = ce_selfdual_closed(tuples[i], n, tau);
    if (loss < best_loss) {
      best_loss = loss;
      best = static_cast<int>(i);
    }
  }
  return {tuples[best], best_loss};
}

namespace {

int argmin_index(const std::vector<double>& losses) {
  int best = 0;
  for (std::size_t i = 1; i < losses.size(); ++i) {
    if (losses[i] < losses[best]) best = static_cast<int>(i);
  }
  return best;
}

constexpr double kTauSearchLo = 1e-3;
constexpr double kTauSearchHi = 1e3;

double definiteness_boundary(int n, double tol, int sign, const char* name) {
  // sign=-1: concave for small tau; sign=+1: convex for large tau. Either
  // way the predicate "definite on the small-tau side" is bisected.
  const bool lo_ok = sign < 0 ? curvature_sign_definite(n, kTauSearchLo, -1)
                              : !curvature_sign_definite(n, kTauSearchLo, +1);
  const bool hi_ok = sign < 0 ? !curvature_sign_definite(n, kTauSearchHi, -1)
                              : curvature_sign_definite(n, kTauSearchHi, +1);
  if (!lo_ok || !hi_ok) {
    std::ostringstream msg;
    msg << name << " bracket failure for n = " << n << " on [" << kTauSearchLo
        << ", " << kTauSearchHi << "]";
    throw SearchError(msg.str());
  }
  double lo = kTauSearchLo;
  double hi = kTauSearchHi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool small_side = sign < 0 ? curvature_sign_definite(n, mid, -1)
                                     : !curvature_sign_definite(n, mid, +1);
    (small_side ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool curvature_sign_definite(int n, double tau, int sign, int grid_points) {
  if (grid_points < 2) throw ArgumentError("curvature grid needs >= 2 points");
  for (int i = 0; i < grid_points; ++i) {
    const double x = 1.0 + (n - 2.0) * static_cast<double>(i) / (grid_points - 1);
    if (sign * f_curvature(n, tau, x) <= 0.0) return false;
  }
  return true;
}

double concavity_threshold(int n, double tol) {
  if (n < 3) throw ArgumentError("thresholds are defined for n >= 3");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  return definiteness_boundary(n, tol, -1, "concavity");
}

double convexity_threshold(int n, double tol) {
  if (n < 3) throw ArgumentError("thresholds are defined for n >= 3");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  return definiteness_boundary(n, tol, +1, "convexity");
}

SweepReport crossover_scan(int d, int n, double tau_lo, double tau_hi, double tol,
                           int grid_points) {
  check_orthoplex_regime(d, n);
  if (!(tau_lo > 0.0) || !(tau_hi > tau_lo)) {
    throw ArgumentError("need 0 < tau_lo < tau_hi");
  }
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (grid_points < 2) throw ArgumentError("grid needs at least 2 points");

  SweepReport report;
  report.d = d;
  report.n = n;
  report.tuples = enumerate_tuples(d, n - d);

  report.per_tau.resize(grid_points);
  parallel_for(grid_points, [&](int i) {
    PerTauRecord rec;
    rec.tau = tau_lo + (tau_hi - tau_lo) * static_cast<double>(i) / (grid_points - 1);
    rec.losses.reserve(report.tuples.size());
    for (const auto& tuple : report.tuples) {
      rec.losses.push_back(ce_selfdual_closed(tuple, n, rec.tau));
    }
    rec.argmin = argmin_index(rec.losses);
    report.per_tau[i] = std::move(rec);
  });

  for (int i = 0; i + 1 < grid_points; ++i) {
    const int a = report.per_tau[i].argmin;
    const int b = report.per_tau[i + 1].argmin;
    if (a == b) continue;
    const DimensionTuple& below = report.tuples[a];
    const DimensionTuple& above = report.tuples[b];
    auto diff = [&](double tau) {
      return ce_selfdual_closed(below, n, tau) - ce_selfdual_closed(above, n, tau);
    };
    double lo = report.per_tau[i].tau;
    double hi = report.per_tau[i + 1].tau;
    if (diff(lo) > 0.0 || diff(hi) < 0.0) {
      // Ties or a third tuple inside the cell; report the midpoint at grid
      // resolution rather than bisecting a sign that is not there.
      report.crossovers.push_back({0.5 * (lo + hi), below, above});
      continue;
    }
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) < 0.0 ? lo : hi) = mid;
    }
    report.crossovers.push_back({0.5 * (lo + hi), below, above});
  }

  report.concavity_threshold = concavity_threshold(n, tol);
  report.convexity_threshold = convexity_threshold(n, tol);
  return report;
}

}  // namespace orthoplex
