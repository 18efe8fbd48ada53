//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/linesearch.hpp"

#include <algorithm>
#include <stdexcept>

namespace gsopt {

namespace {
void check_inputs(const Vector& g, const Vector& d, double gamma, double c) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("line search: gamma not in (0,1)");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("line search: c not in (0,1)");
  if (g.norm() == 0.0) throw std::invalid_argument("line search: zero g");
  if (d.size() != g.size()) throw std::invalid_argument("line search: dimension mismatch");
}
}  // namespace

LineSearchOutcome bals(const Problem& p, const Vector& x, double f_x, const Vector& g,
                       const Vector& d, double gamma, double c, int max_backtracks) {
  check_inputs(g, d, gamma, c);
  if (max_backtracks < 1) throw std::invalid_argument("bals: max_backtracks must be positive");
  const double gnorm = g.norm();
  LineSearchOutcome out;
  double t = 1.0;
  for (int trial = 0; trial < max_backtracks; ++trial) {
    const double ft = p.f(x + t * d);
    ++out.f_evals;
    if (ft - f_x < -c * t * gnorm) {
      out.t = t;
      out.f_new = ft;
      out.backtracks = trial;
      return out;
    }
    t *= gamma;
  }
  out.exhausted = true;
  out.backtracks = max_backtracks;
  return out;
}

LineSearchOutcome lbals(const Problem& p, const Vector& x, double f_x, const Vector& g,
                        const Vector& d, double eps, double gamma, double c) {
  check_inputs(g, d, gamma, c);
  if (!(eps > 0.0)) throw std::invalid_argument("lbals: eps must be positive");
  const double gnorm = g.norm();
  const double threshold = std::min(1.0, gamma * eps / 3.0);
  LineSearchOutcome out;
  double t = 1.0;
  while (t > threshold) {
    const double ft = p.f(x + t * d);
    ++out.f_evals;
    if (ft - f_x < -c * t * gnorm) {
      out.t = t;
      out.f_new = ft;
      return out;
    }
    ++out.backtracks;
    t *= gamma;
  }
  out.null_step = true;
  out.backtracks = out.f_evals;
  return out;
}

}  // namespace gsopt
