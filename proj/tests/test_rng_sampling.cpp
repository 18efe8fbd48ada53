//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/kernels.hpp"
#include "gsopt/sampling.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gsopt;

TEST_CASE("rng stream is reproducible and platform-pinned") {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  // mt19937_64 reference value: 10000th output from seed 5489
  std::mt19937_64 ref(5489u);
  for (int i = 0; i < 9999; ++i) ref();
  CHECK(ref() == 9981545732273789042ULL);

  RngStream u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    const double w = u.uniform_open();
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
    CHECK(std::isfinite(u.normal()));
  }
}

TEST_CASE("unit ball sampling: support and dimension one") {
  RngStream rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vector u = sample_unit_ball(rng, 1);
    CHECK(u.size() == 1);
    CHECK(u[0] >= -1.0);
    CHECK(u[0] <= 1.0);
  }
  for (int n : {2, 5, 17}) {
    for (int i = 0; i < 200; ++i) CHECK(sample_unit_ball(rng, n).norm() <= 1.0 + 1e-15);
  }
  CHECK_THROWS_AS(sample_unit_ball(rng, 0), std::invalid_argument);
}

TEST_CASE("unit ball sampling: volume ratio, mean, radial CDF") {
  const int N = 100000;
  RngStream rng(2024);
  int inside_half = 0;
  Vector mean = Vector::Zero(3);
  std::vector<double> radii(N);
  for (int i = 0; i < N; ++i) {
    const Vector u = sample_unit_ball(rng, 3);
    radii[i] = u.norm();
    if (radii[i] <= 0.5) ++inside_half;
    mean += u;
  }
  mean /= N;

  // volume ratio of the half-radius ball is (1/2)^3
  CHECK(std::abs(inside_half / double(N) - 0.125) < 0.01);

  // component mean within 3 sigma of the CLT bound: Var(u_i) = 1/(n+2)
  const double sigma_mean = std::sqrt(1.0 / 5.0 / N);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i]) <= 3.0 * sigma_mean);

  // Kolmogorov-Smirnov distance between the empirical radial CDF and r^3
  std::sort(radii.begin(), radii.end());
  double ks = 0.0;
  for (int i = 0; i < N; ++i) {
    const double model = std::pow(radii[i], 3);
    ks = std::max(ks, std::abs((i + 1) / double(N) - model));
    ks = std::max(ks, std::abs(model - i / double(N)));
  }
  CHECK(ks <= 1.95 / std::sqrt(double(N)));
}

TEST_CASE("bundle construction: geometry and reuse") {
  const Problem p = ProblemRegistry::builtin().get("chained_lq", 8);
  const Vector x = p.x0;
  RngStream rng(5);
  const GradientBundle b = build_bundle(p, x, 0.25, 12, rng);
  CHECK(b.points.size() == 13);
  CHECK(b.grads.cols() == 13);
  CHECK(oracle::bitwise_equal(b.points[0], x));
  for (int j = 1; j <= 12; ++j) CHECK((b.points[j] - x).norm() <= 0.25 + 1e-15);
  CHECK(b.grads.allFinite());
  CHECK(oracle::bitwise_equal(b.grads.col(0), p.grad(x)));

  // bit-for-bit reproducibility from an equal seed
  RngStream r1(77), r2(77);
  const GradientBundle b1 = build_bundle(p, x, 0.1, 9, r1);
  const GradientBundle b2 = build_bundle(p, x, 0.1, 9, r2);
  CHECK(oracle::bitwise_equal(b1.grads, b2.grads));
  for (int j = 0; j <= 9; ++j) CHECK(oracle::bitwise_equal(b1.points[j], b2.points[j]));

  // a supplied center gradient lands in column 0 untouched
  RngStream r3(77);
  const Vector cg = 2.0 * p.grad(x);
  const GradientBundle b3 = build_bundle(p, x, 0.1, 9, r3, &cg);
  CHECK(oracle::bitwise_equal(b3.grads.col(0), cg));
  CHECK(oracle::bitwise_equal(b3.grads.rightCols(9), b1.grads.rightCols(9)));

  CHECK_THROWS_AS(build_bundle(p, x, 0.1, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(build_bundle(p, x, 0.0, 3, rng), std::invalid_argument);
}

TEST_CASE("bundle of a smooth quadratic reproduces its sample points") {
  // f = 1/2||x||^2 has identity gradient, so gradient columns equal points
  const Problem p = oracle::make_quadratic(Vector::Zero(4), Vector::Ones(4));
  RngStream rng(11);
  const Vector x = Vector::Constant(4, 2.0);
  const GradientBundle b = build_bundle(p, x, 0.5, 6, rng);
  for (int j = 0; j <= 6; ++j) {
    CHECK((b.grads.col(j) - b.points[j]).norm() == 0.0);
    CHECK((b.grads.col(j) - x).norm() <= 0.5 + 1e-15);
  }
}

TEST_CASE("bundle of |x1| away from the kink is a singleton hull") {
  Problem p = oracle::make_l1(2);
  // restrict to the first coordinate's kink only
  p.f = [](const Vector& x) { return std::abs(x[0]); };
  p.grad = [](const Vector& x) { return Vector{{x[0] > 0.0 ? 1.0 : -1.0, 0.0}}; };
  p.nondiff = [](const Vector& x) { return x[0] == 0.0; };
  RngStream rng(3);
  const GradientBundle b = build_bundle(p, Vector{{1.0, 0.0}}, 0.5, 20, rng);
  for (int j = 0; j <= 20; ++j) {
    CHECK(b.grads(0, j) == 1.0);
    CHECK(b.grads(1, j) == 0.0);
  }
}

TEST_CASE("nondifferentiable sampled point raises the measure-zero stop") {
  Problem p = oracle::make_l1(2);
  p.nondiff = [](const Vector& x) { return x[0] > 0.9; };  // made easy to hit
  RngStream rng(1);
  CHECK_THROWS_AS(build_bundle(p, Vector{{1.0, 1.0}}, 0.5, 8, rng),
                  NondifferentiableSampleError);
}

TEST_CASE("parallel kernels match the serial reference bitwise") {
  const Problem p = ProblemRegistry::builtin().get("chained_crescent_2", 40);
  RngStream rng(9);
  std::vector<Vector> pts;
  pts.push_back(p.x0);
  for (int j = 0; j < 80; ++j) pts.push_back(p.x0 + 0.05 * sample_unit_ball(rng, 40));

  Matrix Gs(40, 81), Gp(40, 81);
  kernels::serial::eval_gradient_columns(p, pts, Gs, 0);
  kernels::par::eval_gradient_columns(p, pts, Gp, 0);
  CHECK(oracle::bitwise_equal(Gs, Gp));

  Vector lo_s, hi_s, lo_p, hi_p;
  kernels::serial::row_extrema(Gs, lo_s, hi_s);
  kernels::par::row_extrema(Gs, lo_p, hi_p);
  CHECK(oracle::bitwise_equal(lo_s, lo_p));
  CHECK(oracle::bitwise_equal(hi_s, hi_p));

  Matrix Gd(40, 81);
  kernels::eval_gradient_columns(p, pts, Gd, 0);
  CHECK(oracle::bitwise_equal(Gd, Gs));
}
