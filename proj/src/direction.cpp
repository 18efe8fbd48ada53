//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/direction.hpp"

#include "gsopt/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace gsopt {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

constexpr double kWeightFloor = 1e-14;

/// Affine minimizer over the span of the corral columns: minimizes ||S a||
/// subject to sum(a) = 1. The constraint is eliminated against the last
/// column, leaving an unconstrained least-squares problem in the column
/// differences that is solved by rank-revealing QR. Working on S directly
/// keeps the conditioning at cond(S) instead of the cond(S)^2 a normal-
/// equations KKT system would have, which is what keeps the weight signs
/// trustworthy for corrals holding near-duplicate columns.
bool affine_minimizer(const Matrix& S, Vector& alpha) {
  const int k = static_cast<int>(S.cols());
  if (k == 1) {
    alpha = Vector::Ones(1);
    return true;
  }
  Matrix A = S.leftCols(k - 1).colwise() - S.col(k - 1);
  Vector z = A.colPivHouseholderQr().solve(-S.col(k - 1));
  if (!z.allFinite()) return false;
  alpha.resize(k);
  alpha.head(k - 1) = z;
  alpha[k - 1] = 1.0 - z.sum();
  return true;
}

bool certified(const Matrix& G, const Vector& g, double tol) {
  return qp_certificate_gap(G, g) <= tol * (1.0 + g.squaredNorm());
}

/// Pairwise Frank-Wolfe refinement on the simplex: shifts weight from the
/// worst supported column to the best column with an exact line search.
/// Converges linearly on this QP and handles the near-duplicate-column
/// bundles that stall the active-set method.
bool pairwise_refine(const Matrix& G, double tol, Vector& lambda) {
  const int cols = static_cast<int>(G.cols());
  if (lambda.size() != cols || !lambda.allFinite() || lambda.minCoeff() < 0.0 ||
      !(lambda.sum() > 0.0)) {
    lambda = Vector::Constant(cols, 1.0 / cols);
  } else {
    lambda /= lambda.sum();
  }
  Vector g = G * lambda;
  for (long it = 0; it < 100000; ++it) {
    if ((it & 255) == 255) g.noalias() = G * lambda;  // curb incremental drift
    const Vector grad = G.transpose() * g;
    Eigen::Index jin = 0;
    const double gin = grad.minCoeff(&jin);
    if (g.squaredNorm() - gin <= tol * (1.0 + g.squaredNorm())) return true;
    int jout = -1;
    double gout = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < cols; ++j) {
      if (lambda[j] > 0.0 && grad[j] > gout) {
        gout = grad[j];
        jout = j;
      }
    }
    if (jout < 0 || jout == static_cast<int>(jin)) return certified(G, g, tol);
    const Vector dcol = G.col(jin) - G.col(jout);
    const double dd = dcol.squaredNorm();
    if (dd == 0.0) {
      lambda[jin] += lambda[jout];
      lambda[jout] = 0.0;
      continue;
    }
    const double s = std::clamp(-g.dot(dcol) / dd, 0.0, lambda[jout]);
    if (s == 0.0) return certified(G, g, tol);
    lambda[jout] -= s;
    lambda[jin] += s;
    g += s * dcol;
  }
  Vector g_final = G * lambda;
  return certified(G, g_final, tol);
}

}  // namespace

Vector ideal_vector(const Matrix& G) {
  if (G.cols() < 1) throw std::invalid_argument("ideal_vector: empty bundle");
  Vector lo, hi;
  kernels::row_extrema(G, lo, hi);
  Vector g(G.rows());
  for (int i = 0; i < G.rows(); ++i) {
    g[i] = 0.5 * (sgn(lo[i]) + sgn(hi[i])) * std::min(std::abs(lo[i]), std::abs(hi[i]));
  }
  return g;
}

Vector ideal_vector(const GradientBundle& b) { return ideal_vector(b.grads); }

double qp_certificate_gap(const Matrix& G, const Vector& g) {
  const double gg = g.squaredNorm();
  return gg - (G.transpose() * g).minCoeff();
}

Vector descent_direction(const Vector& g) {
  const double nrm = g.norm();
  if (nrm == 0.0) throw ZeroVectorError("descent_direction: zero vector");
  return -g / nrm;
}

DirectionResult min_norm_qp(const Matrix& G, double tol, QpStats* stats) {
  if (G.cols() < 1) throw std::invalid_argument("min_norm_qp: empty bundle");
  if (tol <= 0.0) throw std::invalid_argument("min_norm_qp: tolerance must be positive");
  const auto t_start = std::chrono::steady_clock::now();
  const int cols = static_cast<int>(G.cols());

  // Corral state: column indices, their weights (> 0, summing to 1), and
  // the current hull point x = G(:,S) * w. Columns that provoke numerical
  // stagnation (near-duplicates of corral members) get banned from entering
  // again; the final certificate still ranges over every column.
  std::vector<int> corral;
  Vector w;
  {
    int j0 = 0;
    G.colwise().squaredNorm().minCoeff(&j0);
    corral = {j0};
    w = Vector::Ones(1);
  }
  Vector x = G.col(corral[0]);
  std::vector<char> banned(cols, 0);
  bool degenerate = false;
  const long max_major = 100L * (cols + 2);
  long major = 0;

  for (; major < max_major && !degenerate; ++major) {
    // Most improving non-banned column.
    const Vector scores = G.transpose() * x;
    int jmin = -1;
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < cols; ++j) {
      if (!banned[j] && scores[j] < dmin) {
        dmin = scores[j];
        jmin = j;
      }
    }
    // Enter on a quarter of the certificate tolerance so the final point
    // clears the full-tolerance check with margin.
    if (jmin < 0 || dmin > x.squaredNorm() - 0.25 * tol * (1.0 + x.squaredNorm())) break;
    if (std::find(corral.begin(), corral.end(), jmin) != corral.end()) {
      banned[jmin] = 1;  // no numerical progress from re-entering
      continue;
    }
    corral.push_back(jmin);
    Vector wext(corral.size());
    wext.head(w.size()) = w;
    wext[w.size()] = 0.0;
    w = wext;

    // Minor cycle: pull the affine minimizer back into the corral hull,
    // pruning columns whose weight hits the floor.
    for (;;) {
      Matrix S(G.rows(), corral.size());
      for (size_t q = 0; q < corral.size(); ++q) S.col(q) = G.col(corral[q]);
      Vector alpha;
      if (!affine_minimizer(S, alpha)) {
        degenerate = true;
        break;
      }
      if (alpha.minCoeff() > kWeightFloor) {
        w = alpha;
        x.noalias() = S * w;
        break;
      }
      // Step toward alpha until the first weight leaves the hull.
      double theta = 1.0;
      for (int i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= kWeightFloor) {
          const double denom = w[i] - alpha[i];
          if (denom > 0.0) theta = std::min(theta, w[i] / denom);
        }
      }
      if (theta <= 0.0) {
        // The entering column came back with a nonpositive affine weight;
        // it is the only zero-weight member, so drop and ban it.
        banned[jmin] = 1;
        corral.pop_back();
        w = Vector(w.head(corral.size()));
        w /= w.sum();
        break;
      }
      w = (1.0 - theta) * w + theta * alpha;
      std::vector<int> keep;
      for (int i = 0; i < w.size(); ++i)
        if (w[i] > kWeightFloor) keep.push_back(i);
      if (keep.empty()) keep.push_back(0);
      std::vector<int> next_corral;
      Vector next_w(keep.size());
      for (size_t i = 0; i < keep.size(); ++i) {
        next_corral.push_back(corral[keep[i]]);
        next_w[i] = w[keep[i]];
      }
      corral = std::move(next_corral);
      w = next_w / next_w.sum();
      if (corral.size() == 1) {
        x = G.col(corral[0]);
        break;
      }
    }
  }

  Vector lambda = Vector::Zero(cols);
  for (size_t i = 0; i < corral.size(); ++i) lambda[corral[i]] += w[i];
  if (!certified(G, G * lambda, tol)) {
    if (!pairwise_refine(G, tol, lambda))
      throw QpMaxIterationsError("min_norm_qp: no certified point within iteration budget");
  }

  DirectionResult res;
  res.lambda = lambda;
  res.g = G * lambda;
  res.kind = DirectionKind::steepest_approx;
  if (res.g.norm() > 0.0) res.d = descent_direction(res.g);
  if (stats) {
    ++stats->solves;
    stats->major_iters += major;
    stats->seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  }
  return res;
}

DirectionResult min_norm_qp(const GradientBundle& b, double tol, QpStats* stats) {
  return min_norm_qp(b.grads, tol, stats);
}

}  // namespace gsopt
