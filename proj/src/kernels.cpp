//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsopt::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col) {
  const int cols = static_cast<int>(points.size());
  for (int j = first_col; j < cols; ++j) G.col(j) = p.grad(points[j]);
}

void row_extrema(const Matrix& G, Vector& lo, Vector& hi) {
  lo = G.rowwise().minCoeff();
  hi = G.rowwise().maxCoeff();
}

}  // namespace serial

namespace par {

void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col) {
  const int cols = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = first_col; j < cols; ++j) G.col(j) = p.grad(points[j]);
}

void row_extrema(const Matrix& G, Vector& lo, Vector& hi) {
  const int rows = static_cast<int>(G.rows());
  lo.resize(rows);
  hi.resize(rows);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) {
    double mn = G(i, 0), mx = G(i, 0);
    for (int j = 1; j < G.cols(); ++j) {
      const double v = G(i, j);
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    lo[i] = mn;
    hi[i] = mx;
  }
}

}  // namespace par

namespace {
bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}
}  // namespace

void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col) {
  // Gradient evaluations dominate a run; spread them unless the suite
  // runner already owns the threads.
  const long work = static_cast<long>(points.size()) * G.rows();
  if (max_threads() > 1 && !in_parallel_region() && work >= 4096) {
    par::eval_gradient_columns(p, points, G, first_col);
  } else {
    serial::eval_gradient_columns(p, points, G, first_col);
  }
}

void row_extrema(const Matrix& G, Vector& lo, Vector& hi) {
  if (max_threads() > 1 && !in_parallel_region() && G.size() >= 16384) {
    par::row_extrema(G, lo, hi);
  } else {
    serial::row_extrema(G, lo, hi);
  }
}

}  // namespace gsopt::kernels
