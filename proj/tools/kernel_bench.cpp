//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

// Times the serial reference kernels against their OpenMP versions on the
// workloads a run actually produces: gradient evaluation over bundle
// points and the row-extrema reduction behind the ideal vector.

#include "gsopt/kernels.hpp"
#include "gsopt/problem.hpp"
#include "gsopt/rng.hpp"
#include "gsopt/sampling.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>

namespace {

double time_of(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
  using namespace gsopt;
  fmt::print("kernel benchmark, {} thread(s)\n\n", kernels::max_threads());
  fmt::print("{:<28} {:>8} {:>8} {:>12} {:>12} {:>8}\n", "kernel", "n", "m", "serial[s]",
             "parallel[s]", "speedup");

  for (const auto& [pname, n] : {std::pair<const char*, int>{"chained_crescent_2", 500},
                                 {"l1hilb", 300},
                                 {"maxq", 1000}}) {
    const Problem p = ProblemRegistry::builtin().get(pname, n);
    const int m = 2 * n;
    RngStream rng(7);
    std::vector<Vector> points;
    points.push_back(p.x0);
    for (int j = 0; j < m; ++j) points.push_back(p.x0 + 0.01 * sample_unit_ball(rng, n));

    Matrix Gs(n, m + 1), Gp(n, m + 1);
    const int reps = std::string(pname) == "l1hilb" ? 3 : 10;
    const double ts =
        time_of([&] { kernels::serial::eval_gradient_columns(p, points, Gs, 0); }, reps);
    const double tp = time_of([&] { kernels::par::eval_gradient_columns(p, points, Gp, 0); }, reps);
    if ((Gs - Gp).cwiseAbs().maxCoeff() != 0.0) {
      fmt::print(stderr, "kernel mismatch for {}\n", pname);
      return 1;
    }
    fmt::print("{:<28} {:>8} {:>8} {:>12.6f} {:>12.6f} {:>8.2f}\n",
               fmt::format("grad_columns/{}", pname), n, m, ts, tp, ts / tp);

    Vector lo_s, hi_s, lo_p, hi_p;
    const double rs = time_of([&] { kernels::serial::row_extrema(Gs, lo_s, hi_s); }, 50);
    const double rp = time_of([&] { kernels::par::row_extrema(Gs, lo_p, hi_p); }, 50);
    if ((lo_s - lo_p).cwiseAbs().maxCoeff() != 0.0 || (hi_s - hi_p).cwiseAbs().maxCoeff() != 0.0) {
      fmt::print(stderr, "row_extrema mismatch for {}\n", pname);
      return 1;
    }
    fmt::print("{:<28} {:>8} {:>8} {:>12.6f} {:>12.6f} {:>8.2f}\n",
               fmt::format("row_extrema/{}", pname), n, m, rs, rp, rs / rp);
  }
  return 0;
}
