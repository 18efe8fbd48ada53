//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/problem.hpp"

#include <vector>

namespace gsopt::kernels {

/// Number of threads the parallel kernels will use.
int max_threads();

// Serial reference implementations. These stay the ground truth the
// OpenMP kernels are tested against and the baseline the kernel benchmark
// compares with.
namespace serial {

/// Fills G.col(j) = grad(points[j]) for j in [first_col, points.size()).
void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col);

/// Row-wise minima and maxima of G.
void row_extrema(const Matrix& G, Vector& lo, Vector& hi);

}  // namespace serial

namespace par {

void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col);
void row_extrema(const Matrix& G, Vector& lo, Vector& hi);

}  // namespace par

// Dispatching entry points used by the library. Both kernels write each
// output element from exactly one thread, so results are bitwise identical
// to the serial reference at any thread count.
void eval_gradient_columns(const Problem& p, const std::vector<Vector>& points, Matrix& G,
                           int first_col);
void row_extrema(const Matrix& G, Vector& lo, Vector& hi);

}  // namespace gsopt::kernels
