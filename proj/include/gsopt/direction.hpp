//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/sampling.hpp"

#include <optional>

namespace gsopt {

struct ZeroVectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Internal stagnation of the min-norm QP without a valid certificate.
struct QpMaxIterationsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DirectionKind { ideal, steepest_approx, none };

struct DirectionResult {
  Vector g;                 ///< selected bundle element
  std::optional<Vector> d;  ///< -g/||g||, absent when g = 0
  DirectionKind kind = DirectionKind::none;
  Vector lambda;            ///< hull weights, steepest_approx only (size = #columns)
};

/// Per-run accounting of QP work.
struct QpStats {
  long solves = 0;
  double seconds = 0.0;
  long major_iters = 0;
};

/// Componentwise nearest-to-zero element of the interval hull of the
/// columns of G: component i is the point of [row-min_i, row-max_i]
/// closest to zero. One pass over G; no optimization subproblem.
Vector ideal_vector(const Matrix& G);
Vector ideal_vector(const GradientBundle& b);

/// Minimum-norm point of the convex hull of the columns of G, computed by
/// the minimum-norm-point active-set method over the column set and
/// certified by the variational inequality
///     <g, G_j - g> >= -tol * (1 + ||g||^2)   for every column j.
/// Time spent and solve counts accumulate into `stats` when given.
/// Throws QpMaxIterationsError if no certified point is reached.
DirectionResult min_norm_qp(const Matrix& G, double tol, QpStats* stats = nullptr);
DirectionResult min_norm_qp(const GradientBundle& b, double tol, QpStats* stats = nullptr);

/// -g/||g||; throws ZeroVectorError when g = 0.
Vector descent_direction(const Vector& g);

/// max_j <g, g - G_j>; nonpositive (up to tolerance) exactly at the
/// minimum-norm point. Exposed for tests.
double qp_certificate_gap(const Matrix& G, const Vector& g);

}  // namespace gsopt
