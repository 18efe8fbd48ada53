//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/direction.hpp"
#include "gsopt/linesearch.hpp"
#include "gsopt/problem.hpp"
#include "gsopt/rng.hpp"
#include "gsopt/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsopt {

enum class Method { gs, gsi };
enum class LineSearchMode { bals, lbals };
enum class NullReason { none, stationarity_shrink, lbals_null, bals_exhausted };
enum class StopReason {
  tolerance_met,
  target_met,
  max_iters,
  nondiff_sample,
  perturbation_failed,
  solver_error
};

const char* to_string(Method m);
const char* to_string(LineSearchMode m);
const char* to_string(NullReason r);
const char* to_string(StopReason r);
const char* to_string(DirectionKind k);

struct PerturbationFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative-error stop on the known minimum value: triggers exactly when
/// |f - f_star| / (|f_star| + 1) < tol.
struct StoppingRule {
  double f_star = 0.0;
  double tol = 5e-4;
  bool met(double f) const;
};

/// Every scalar parameter of the solver loop and its line searches.
struct SolverConfig {
  double eps0 = 1e-3;       ///< initial sampling radius
  double nu0 = 1e-3;        ///< initial stationarity tolerance
  double mu = 0.5;          ///< radius reduction factor
  double theta = 0.5;       ///< tolerance reduction factor
  double gamma = 0.5;       ///< backtracking factor
  double armijo_c = 1e-6;   ///< sufficient-decrease parameter
  int m = 1;                ///< sample size
  double eps_opt = 0.0;     ///< radius stopping tolerance
  double nu_opt = 0.0;      ///< stationarity stopping tolerance
  int max_iters = 2000;
  int max_backtracks = 50;
  LineSearchMode line_search = LineSearchMode::bals;
  Method method = Method::gsi;
  std::uint64_t seed = 0;
  std::optional<double> f_lower;  ///< known lower bound on f, for the serious-step bound
  double qp_tol = 1e-10;          ///< optimality-certificate tolerance of the inner QP

  void validate() const;  ///< throws std::invalid_argument on bad fields

  /// Experiment defaults by problem dimension: m = 2n, eps0 = 1e-3 for
  /// n <= 10 else 1e-2, nu0 = 1e-3 / 1e-2 / 1e-1 for small/medium/large.
  static SolverConfig defaults_for(int n);

  /// Relative stopping tolerance by scale class (5e-4 small, 1e-3 otherwise).
  static double stop_tol_for(int n);

  /// Fixed-tolerance regime under the limited line search: nu and eps do
  /// not shrink (nu_opt = nu0, eps_opt = eps0), m = 4n, so the run stops at
  /// the first certified stationarity and the serious-step bound applies.
  static SolverConfig fixed_tolerance_regime(int n, double nu, double eps, double c,
                                             double f_lower);
};

struct IterationRecord {
  int k = 0;
  Vector x;              ///< iterate at the start of the iteration
  double f_x = 0.0;
  DirectionKind direction_kind = DirectionKind::none;
  double g_norm = 0.0;   ///< norm of the vector the step used (or that triggered the shrink)
  double g_ideal_norm = -1.0;  ///< norm of the interval-hull vector, < 0 when not computed
  double t = 0.0;
  double eps = 0.0, nu = 0.0;  ///< radius / tolerance in effect during this iteration
  bool serious = false;
  NullReason null_reason = NullReason::none;
  bool perturbed = false;
  bool qp_solved = false;
};

struct RunReport {
  int iters = 0;
  int nii = 0;               ///< direction iterations that skipped the QP
  int direction_iters = 0;   ///< iterations that computed a normalized direction
  double pii = 0.0;          ///< nii / direction_iters (0 when no direction iterations)
  long f_eval = 0;
  long g_eval = 0;
  long qp_count = 0;
  double qp_time = 0.0;
  long qp_major_iters = 0;
  int serious_count = 0;
  double wall_time = 0.0;
  double final_f = 0.0;
  Vector final_x;
  bool success = false;
  StopReason stop_reason = StopReason::max_iters;
  std::string error;  ///< set when stop_reason == solver_error
};

struct RunResult {
  RunReport report;
  std::vector<IterationRecord> trace;
};

/// Runs the sampling solver configured by `cfg` from `x0` (default: the
/// problem's start point). The method field selects between the always-QP
/// baseline and the variant that tries the interval-hull vector first.
RunResult run_solver(const Problem& p, const SolverConfig& cfg, RngStream& rng,
                     const std::optional<StoppingRule>& target = {},
                     const Vector* x0 = nullptr);

/// Convenience fronts pinning the method field.
RunResult gsi_run(const Problem& p, SolverConfig cfg, RngStream& rng,
                  const std::optional<StoppingRule>& target = {}, const Vector* x0 = nullptr);
RunResult gs_run(const Problem& p, SolverConfig cfg, RngStream& rng,
                 const std::optional<StoppingRule>& target = {}, const Vector* x0 = nullptr);

struct PerturbationOutcome {
  Vector x;
  double f = 0.0;
  int attempts = 0;  ///< sampling rounds used (0 = candidate already fine)
  int f_evals = 0;
};

/// Replaces a nondifferentiable candidate x_k + t_k d_k by a nearby
/// differentiable point keeping the sufficient decrease
///   f(x_hat) - f(x_k) < -c t_k ||g_k||
/// and staying within min(t_k, eps_k) of the candidate. Attempt j draws
/// from the ball of radius min(t_k, eps_k) * 2^-j; both conditions are
/// rechecked on every attempt. Throws PerturbationFailedError after 64
/// attempts.
PerturbationOutcome perturb_iterate(const Problem& p, const Vector& x_k, double f_xk, double t_k,
                                    const Vector& d_k, double eps_k, const Vector& g_k, double c,
                                    RngStream& rng);

/// Serious-step bound in the fixed-tolerance regime:
/// floor((f_x0 - f_lower) / (c * nu0 * min(1, gamma*eps0/3))) + 1.
/// Requires cfg.f_lower.
long serious_iteration_bound(const SolverConfig& cfg, double f_x0);

}  // namespace gsopt
