//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/problem.hpp"

namespace gsopt {

struct LineSearchOutcome {
  double t = 0.0;        ///< accepted step, 0 on exhaustion / null step
  int backtracks = 0;    ///< failed trials before acceptance
  int f_evals = 0;       ///< objective evaluations charged (one per trial)
  double f_new = 0.0;    ///< f(x + t d) when t > 0
  bool exhausted = false;
  bool null_step = false;
};

/// Backtracking Armijo search: starts at t = 1 and multiplies by gamma
/// until f(x + t d) - f(x) < -c t ||g|| or `max_backtracks` trials have
/// been spent. Exhaustion is an outcome, not an error; the caller reacts
/// by shrinking the sampling radius. f_x is the cached value of f(x).
LineSearchOutcome bals(const Problem& p, const Vector& x, double f_x, const Vector& g,
                       const Vector& d, double gamma, double c, int max_backtracks);

/// Threshold-limited variant: trials run only while t > min(1, gamma*eps/3)
/// (strict), and the search returns t = 0 with null_step set once the
/// trial step passes below the threshold without acceptance.
LineSearchOutcome lbals(const Problem& p, const Vector& x, double f_x, const Vector& g,
                        const Vector& d, double eps, double gamma, double c);

}  // namespace gsopt
