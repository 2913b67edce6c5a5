#include "orthoplex/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orthoplex/parallel.hpp"

namespace orthoplex {

double coherence(const SphericalConfig& x) {
  const int n = x.size();
  if (n < 2) throw ArgumentError("coherence needs at least 2 points");
  const Eigen::MatrixXd gram = x.gram();
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best = std::max(best, gram(i, j));
    }
  }
  return best;
}

namespace {

// Wolfe's min-norm-point algorithm over conv(rows of Y): the outer cycle adds
// the Frank-Wolfe vertex argmin <y_i, p>, the inner cycle minimizes ||p|| over
// the affine hull of the current corral (bordered Gram solve) and trims atoms
// whose coefficient would go negative. Terminates at the exact minimizer; the
// reported certificate is the Frank-Wolfe gap <p,p> - min_i <y_i,p>.
struct MinNormResult {
  Eigen::VectorXd weights;
  Eigen::VectorXd point;
  double gap = 0.0;
  int cycles = 0;
};

MinNormResult min_norm_point(const Eigen::MatrixXd& y, int max_cycles = 10000) {
  const int k = static_cast<int>(y.rows());
  Eigen::VectorXd norms2 = y.rowwise().squaredNorm();
  const double scale = std::max(1.0, norms2.maxCoeff());
  const double gap_tol = 1e-13 * scale;

  int start = 0;
  norms2.minCoeff(&start);
  std::vector<int> corral{start};
  Eigen::VectorXd corral_w = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd p = y.row(start);

  double gap = std::numeric_limits<double>::infinity();
  int cycles = 0;
  while (cycles < max_cycles) {
    ++cycles;
    Eigen::VectorXd grad = y * p;
    int s = 0;
    const double min_grad = grad.minCoeff(&s);
    const double f = p.squaredNorm();
    gap = f - min_grad;
    if (gap <= gap_tol || f <= 1e-20 * scale) break;

    if (std::find(corral.begin(), corral.end(), s) == corral.end()) {
      corral.push_back(s);
      corral_w.conservativeResize(corral_w.size() + 1);
      corral_w(corral_w.size() - 1) = 0.0;
    }

    // Minor cycles: affine minimizer over the corral, stepping back toward
    // the previous feasible weights whenever a coefficient crosses zero.
    while (cycles < max_cycles) {
      ++cycles;
      const int m = static_cast<int>(corral.size());
      Eigen::MatrixXd atoms(m, y.cols());
      for (int i = 0; i < m; ++i) atoms.row(i) = y.row(corral[i]);

      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
      kkt.topLeftCorner(m, m) = atoms * atoms.transpose();
      kkt.block(m, 0, 1, m).setOnes();
      kkt.block(0, m, m, 1).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      rhs(m) = 1.0;
      Eigen::VectorXd affine =
          kkt.completeOrthogonalDecomposition().solve(rhs).head(m);

      if ((affine.array() > 1e-14).all()) {
        corral_w = affine;
        p = atoms.transpose() * corral_w;
        break;
      }

      double theta = 1.0;
      for (int i = 0; i < m; ++i) {
        if (affine(i) <= 1e-14 && corral_w(i) > affine(i)) {
          theta = std::min(theta, corral_w(i) / (corral_w(i) - affine(i)));
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      corral_w = (1.0 - theta) * corral_w + theta * affine;

      std::vector<int> kept_idx;
      for (int i = 0; i < m; ++i) {
        if (corral_w(i) > 1e-14) kept_idx.push_back(i);
      }
      if (kept_idx.empty()) kept_idx.push_back(0);
      std::vector<int> new_corral;
      Eigen::VectorXd new_w(kept_idx.size());
      for (std::size_t i = 0; i < kept_idx.size(); ++i) {
        new_corral.push_back(corral[kept_idx[i]]);
        new_w(static_cast<int>(i)) = std::max(corral_w(kept_idx[i]), 0.0);
      }
      corral = std::move(new_corral);
      corral_w = new_w / new_w.sum();
      p.setZero();
      for (std::size_t i = 0; i < corral.size(); ++i) {
        p += corral_w(static_cast<int>(i)) * y.row(corral[i]).transpose();
      }
    }
  }

  MinNormResult out;
  out.weights = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < corral.size(); ++i) {
    out.weights(corral[i]) += corral_w(static_cast<int>(i));
  }
  out.point = y.transpose() * out.weights;
  out.gap = gap;
  out.cycles = cycles;
  return out;
}

}  // namespace

HullDistanceResult hull_distance(const Eigen::VectorXd& query,
                                 const Eigen::MatrixXd& generators) {
  if (generators.rows() < 1) {
    throw ArgumentError("hull_distance needs at least one generator");
  }
  if (generators.cols() != query.size()) {
    throw ArgumentError("query dimension does not match generators");
  }
  Eigen::MatrixXd translated = generators.rowwise() - query.transpose();
  MinNormResult mnp = min_norm_point(translated);

  HullDistanceResult out;
  out.weights = mnp.weights;
  out.witness = generators.transpose() * mnp.weights;
  out.distance = mnp.point.norm();
  out.gap = mnp.gap;
  out.iterations = mnp.cycles;
  return out;
}

HullDistanceResult hull_distance(const Eigen::VectorXd& query,
                                 const SphericalConfig& generators) {
  return hull_distance(query, generators.vectors());
}

MarginResult margin(const SphericalConfig& x) {
  const int n = x.size();
  if (n < 2) throw ArgumentError("margin needs at least 2 points");
  MarginResult out;
  out.distances.resize(n);
  parallel_for(n, [&](int j) {
    Eigen::MatrixXd others(n - 1, x.dim());
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (i != j) others.row(r++) = x.vectors().row(i);
    }
    out.distances(j) = hull_distance(x.point(j), others).distance;
  });
  out.margin = out.distances.minCoeff();
  return out;
}

RadonPartition radon_partition(const SphericalConfig& x) {
  const int n = x.size();
  const int d = x.dim();

  // Null vector of the lifted (d+1) x n system [x_i; 1], taken from the
  // smallest-singular-value direction; sign fixed so the first entry above
  // 1e-12 is positive.
  Eigen::MatrixXd lifted(d + 1, n);
  lifted.topRows(d) = x.vectors().transpose();
  lifted.row(d).setOnes();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lifted, Eigen::ComputeFullV);
  Eigen::VectorXd lambda = svd.matrixV().col(n - 1);
  const double residual = (lifted * lambda).norm();
  if (residual > 1e-8 * std::sqrt(static_cast<double>(n))) {
    std::ostringstream msg;
    msg << "points are affinely independent (lifted residual " << residual
        << "); no Radon partition exists";
    throw NoPartitionError(msg.str());
  }

  for (int i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) > 1e-12) {
      if (lambda(i) < 0) lambda = -lambda;
      break;
    }
  }

  RadonPartition out;
  out.coefficients = lambda;
  double positive_mass = 0.0;
  Eigen::VectorXd point = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) {
    if (lambda(i) < -1e-12) {
      out.side_b.push_back(i);
    } else {
      out.side_a.push_back(i);  // exact zeros join side_a
      if (lambda(i) > 1e-12) {
        positive_mass += lambda(i);
        point += lambda(i) * x.point(i);
      }
    }
  }
  if (out.side_b.empty() || positive_mass <= 0.0) {
    throw NoPartitionError("degenerate affine dependence; sides are one-sided");
  }
  out.radon_point = point / positive_mass;
  return out;
}

RattlerReport find_rattlers(const SphericalConfig& x, double rattler_tol) {
  const int n = x.size();
  if (n < 2) throw ArgumentError("find_rattlers needs at least 2 points");

  RattlerReport out;
  MarginResult m = margin(x);
  for (int j = 0; j < n; ++j) {
    if (m.distances(j) > m.margin + rattler_tol) out.softmax.push_back(j);
  }

  const Eigen::MatrixXd gram = x.gram();
  const double alpha = coherence(x);
  for (int j = 0; j < n; ++j) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (i != j) row_max = std::max(row_max, gram(i, j));
    }
    if (row_max < alpha - rattler_tol) out.tammes.push_back(j);
  }
  return out;
}

std::vector<std::vector<int>> gram_components(const Eigen::MatrixXd& gram,
                                              double threshold) {
  const int n = static_cast<int>(gram.rows());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> stack{s};
    std::vector<int> component;
    seen[s] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (int v = 0; v < n; ++v) {
        if (!seen[v] && v != u && std::abs(gram(u, v)) > threshold) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

namespace {

int numeric_rank(const Eigen::MatrixXd& rows) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = 1e-8 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& all, const std::vector<int>& idx) {
  Eigen::MatrixXd out(idx.size(), all.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = all.row(idx[i]);
  return out;
}

}  // namespace

BatchDecomposition orthoplex_decompose(const SphericalConfig& x, double tol) {
  const int n = x.size();
  const int d = x.dim();
  if (n < d + 2 || n > 2 * d) {
    std::ostringstream msg;
    msg << "decomposition is defined for d+2 <= n <= 2d, got (d, n) = (" << d
        << ", " << n << ")";
    throw RegimeError(msg.str());
  }
  const double alpha = coherence(x);
  if (alpha > tol) {
    std::ostringstream msg;
    msg << "coherence " << alpha << " exceeds tolerance " << tol
        << "; not a spherical code";
    throw NotSphericalCodeError(msg.str());
  }

  BatchDecomposition out;
  const Eigen::MatrixXd gram = x.gram();
  for (const auto& component : gram_components(gram, tol)) {
    const int size = static_cast<int>(component.size());
    const int rank = numeric_rank(select_rows(x.vectors(), component));
    if (rank == size) {
      out.s0.insert(out.s0.end(), component.begin(), component.end());
    } else if (rank == size - 1) {
      out.batches.push_back(component);
      out.ranks.push_back(rank);
    } else {
      std::ostringstream msg;
      msg << "component of size " << size << " has span rank " << rank
          << "; matches neither S_0 nor a simplex batch";
      throw DecompositionError(msg.str());
    }
  }
  std::sort(out.s0.begin(), out.s0.end());

  if (!out.s0.empty()) {
    const int s0_rank = numeric_rank(select_rows(x.vectors(), out.s0));
    if (s0_rank != static_cast<int>(out.s0.size())) {
      std::ostringstream msg;
      msg << "merged S_0 of size " << out.s0.size() << " has span rank " << s0_rank;
      throw DecompositionError(msg.str());
    }
  }
  if (static_cast<int>(out.batches.size()) < n - d) {
    std::ostringstream msg;
    msg << "found " << out.batches.size() << " batches; structure needs at least "
        << n - d;
    throw DecompositionError(msg.str());
  }
  return out;
}

}  // namespace orthoplex
