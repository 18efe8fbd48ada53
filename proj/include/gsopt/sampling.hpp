//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/problem.hpp"
#include "gsopt/rng.hpp"

#include <vector>

namespace gsopt {

/// Gradients collected at the current iterate and at m points sampled from
/// the surrounding ball: column j of `grads` is the gradient at points[j],
/// with points[0] the center itself.
struct GradientBundle {
  Vector center;
  double radius = 0.0;
  std::vector<Vector> points;  ///< size m+1; points[0] == center
  Matrix grads;                ///< n x (m+1)

  int dim() const { return static_cast<int>(grads.rows()); }
  int sample_size() const { return static_cast<int>(grads.cols()) - 1; }
};

/// Uniform draw from the closed unit ball: normalized Gaussian direction
/// scaled by U^(1/n), which is exact and rejection-free.
Vector sample_unit_ball(RngStream& rng, int n);

/// Samples m points in the radius-eps ball around x and evaluates the
/// gradient at the center and every sample. `center_grad`, when given,
/// is reused for column 0 so null iterations do not re-evaluate it.
/// Throws NondifferentiableSampleError if a sampled point is flagged.
GradientBundle build_bundle(const Problem& p, const Vector& x, double eps, int m, RngStream& rng,
                            const Vector* center_grad = nullptr);

}  // namespace gsopt
