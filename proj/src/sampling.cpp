//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/sampling.hpp"

#include "gsopt/kernels.hpp"

#include <fmt/format.h>

#include <cmath>

namespace gsopt {

Vector sample_unit_ball(RngStream& rng, int n) {
  if (n < 1) throw std::invalid_argument("sample_unit_ball: dimension must be positive");
  Vector u(n);
  double nrm = 0.0;
  do {
    for (int i = 0; i < n; ++i) u[i] = rng.normal();
    nrm = u.norm();
  } while (nrm == 0.0);
  const double r = std::pow(rng.uniform_open(), 1.0 / n);
  return (r / nrm) * u;
}

GradientBundle build_bundle(const Problem& p, const Vector& x, double eps, int m, RngStream& rng,
                            const Vector* center_grad) {
  if (eps <= 0.0) throw std::invalid_argument("build_bundle: radius must be positive");
  if (m < 1) throw std::invalid_argument("build_bundle: sample size must be at least 1");
  if (x.size() != p.n) throw std::invalid_argument("build_bundle: dimension mismatch");

  GradientBundle b;
  b.center = x;
  b.radius = eps;
  b.points.reserve(m + 1);
  b.points.push_back(x);
  for (int j = 1; j <= m; ++j) b.points.push_back(x + eps * sample_unit_ball(rng, p.n));

  for (int j = 1; j <= m; ++j) {
    if (!p.is_differentiable(b.points[j]))
      throw NondifferentiableSampleError(
          fmt::format("{}: sampled point {} is not differentiable", p.name, j));
  }

  b.grads.resize(p.n, m + 1);
  if (center_grad) {
    b.grads.col(0) = *center_grad;
    kernels::eval_gradient_columns(p, b.points, b.grads, 1);
  } else {
    kernels::eval_gradient_columns(p, b.points, b.grads, 0);
  }
  return b;
}

}  // namespace gsopt
