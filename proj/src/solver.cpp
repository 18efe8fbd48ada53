//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/solver.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>

namespace gsopt {

const char* to_string(Method m) { return m == Method::gs ? "gs" : "gsi"; }
const char* to_string(LineSearchMode m) { return m == LineSearchMode::bals ? "bals" : "lbals"; }

const char* to_string(NullReason r) {
  switch (r) {
    case NullReason::stationarity_shrink: return "stationarity_shrink";
    case NullReason::lbals_null: return "lbals_null";
    case NullReason::bals_exhausted: return "bals_exhausted";
    default: return "none";
  }
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::tolerance_met: return "tolerance_met";
    case StopReason::target_met: return "target_met";
    case StopReason::max_iters: return "max_iters";
    case StopReason::nondiff_sample: return "nondiff_sample";
    case StopReason::perturbation_failed: return "perturbation_failed";
    default: return "solver_error";
  }
}

const char* to_string(DirectionKind k) {
  switch (k) {
    case DirectionKind::ideal: return "ideal";
    case DirectionKind::steepest_approx: return "steepest_approx";
    default: return "none";
  }
}

bool StoppingRule::met(double f) const {
  return std::abs(f - f_star) / (std::abs(f_star) + 1.0) < tol;
}

void SolverConfig::validate() const {
  auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!(eps0 > 0.0)) throw std::invalid_argument("config: eps0 must be positive");
  if (!(nu0 > 0.0)) throw std::invalid_argument("config: nu0 must be positive");
  if (!in01(mu)) throw std::invalid_argument("config: mu not in (0,1)");
  if (!in01(theta)) throw std::invalid_argument("config: theta not in (0,1)");
  if (!in01(gamma)) throw std::invalid_argument("config: gamma not in (0,1)");
  if (!in01(armijo_c)) throw std::invalid_argument("config: c not in (0,1)");
  if (m < 1) throw std::invalid_argument("config: sample size m must be at least 1");
  if (eps_opt < 0.0 || nu_opt < 0.0)
    throw std::invalid_argument("config: stopping tolerances must be nonnegative");
  if (max_iters < 1) throw std::invalid_argument("config: max_iters must be at least 1");
  if (max_backtracks < 1) throw std::invalid_argument("config: max_backtracks must be at least 1");
  if (!(qp_tol > 0.0)) throw std::invalid_argument("config: qp_tol must be positive");
}

SolverConfig SolverConfig::defaults_for(int n) {
  SolverConfig c;
  c.m = 2 * n;
  c.eps0 = (n <= 10) ? 1e-3 : 1e-2;
  c.nu0 = (n <= 50) ? 1e-3 : (n <= 200 ? 1e-2 : 1e-1);
  return c;
}

double SolverConfig::stop_tol_for(int n) { return n <= 50 ? 5e-4 : 1e-3; }

SolverConfig SolverConfig::fixed_tolerance_regime(int n, double nu, double eps, double c,
                                                  double f_lower_) {
  SolverConfig cfg;
  cfg.line_search = LineSearchMode::lbals;
  cfg.nu0 = cfg.nu_opt = nu;
  cfg.eps0 = cfg.eps_opt = eps;
  cfg.armijo_c = c;
  cfg.m = 4 * n;
  cfg.f_lower = f_lower_;
  return cfg;
}

long serious_iteration_bound(const SolverConfig& cfg, double f_x0) {
  if (!cfg.f_lower) throw std::invalid_argument("serious_iteration_bound: f_lower missing");
  const double step_floor = std::min(1.0, cfg.gamma * cfg.eps0 / 3.0);
  const double denom = cfg.armijo_c * cfg.nu0 * step_floor;
  // nudge past representation error before flooring; rounding an upper
  // bound up keeps it valid
  const double ratio = (f_x0 - *cfg.f_lower) / denom * (1.0 + 1e-12);
  return static_cast<long>(std::floor(ratio)) + 1;
}

PerturbationOutcome perturb_iterate(const Problem& p, const Vector& x_k, double f_xk, double t_k,
                                    const Vector& d_k, double eps_k, const Vector& g_k, double c,
                                    RngStream& rng) {
  const Vector candidate = x_k + t_k * d_k;
  PerturbationOutcome out;
  if (p.is_differentiable(candidate)) {
    out.x = candidate;
    out.f = p.f(candidate);
    out.f_evals = 1;
    return out;
  }
  const double r0 = std::min(t_k, eps_k);
  const double decrease = -c * t_k * g_k.norm();
  double r = r0;
  for (int attempt = 0; attempt < 64; ++attempt, r *= 0.5) {
    out.attempts = attempt + 1;
    const Vector x_hat = candidate + r * sample_unit_ball(rng, p.n);
    if (!p.is_differentiable(x_hat)) continue;
    if ((candidate - x_hat).norm() > r0) continue;
    const double f_hat = p.f(x_hat);
    ++out.f_evals;
    if (f_hat - f_xk < decrease) {
      out.x = x_hat;
      out.f = f_hat;
      return out;
    }
  }
  throw PerturbationFailedError(
      fmt::format("{}: no acceptable perturbation within 64 attempts", p.name));
}

namespace {

struct LoopCounters {
  long f_eval = 0;
  long g_eval = 0;
  int serious = 0;
  int nii = 0;
  int direction_iters = 0;
};

RunReport finalize(const LoopCounters& c, const QpStats& qp, StopReason reason, bool success,
                   int iters, double f, Vector x, double wall) {
  RunReport r;
  r.iters = iters;
  r.nii = c.nii;
  r.direction_iters = c.direction_iters;
  r.pii = c.direction_iters > 0 ? double(c.nii) / double(c.direction_iters) : 0.0;
  r.f_eval = c.f_eval;
  r.g_eval = c.g_eval;
  r.qp_count = qp.solves;
  r.qp_time = qp.seconds;
  r.qp_major_iters = qp.major_iters;
  r.serious_count = c.serious;
  r.wall_time = wall;
  r.final_f = f;
  r.final_x = std::move(x);
  r.success = success;
  r.stop_reason = reason;
  return r;
}

}  // namespace

RunResult run_solver(const Problem& p, const SolverConfig& cfg, RngStream& rng,
                     const std::optional<StoppingRule>& target, const Vector* x0_in) {
  cfg.validate();
  Vector x = x0_in ? *x0_in : p.x0;
  if (x.size() != p.n) throw std::invalid_argument("run_solver: start point dimension mismatch");
  if (!p.is_differentiable(x))
    throw std::invalid_argument("run_solver: start point must be differentiable");

  const auto t_begin = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  };

  LoopCounters counters;
  QpStats qp;
  RunResult result;

  double f_x = p.f(x);
  ++counters.f_eval;
  std::optional<Vector> center_grad;  // invalidated whenever x moves

  double eps = cfg.eps0;
  double nu = cfg.nu0;
  int k = 0;

  for (;; ++k) {
    if (target && target->met(f_x)) {
      result.report =
          finalize(counters, qp, StopReason::target_met, true, k, f_x, std::move(x), elapsed());
      return result;
    }
    if (!(nu >= cfg.nu_opt || eps >= cfg.eps_opt)) {
      result.report =
          finalize(counters, qp, StopReason::tolerance_met, true, k, f_x, std::move(x), elapsed());
      return result;
    }
    if (eps == 0.0 || nu == 0.0) {
      // The shrink schedule underflowed (possible only with zero stopping
      // tolerances); sampling at radius zero is meaningless.
      result.report = finalize(counters, qp, StopReason::tolerance_met, false, k, f_x,
                               std::move(x), elapsed());
      return result;
    }
    if (k >= cfg.max_iters) {
      result.report =
          finalize(counters, qp, StopReason::max_iters, false, k, f_x, std::move(x), elapsed());
      return result;
    }

    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f_x = f_x;
    rec.eps = eps;
    rec.nu = nu;

    GradientBundle bundle;
    try {
      if (!center_grad) {
        center_grad = p.grad(x);
        ++counters.g_eval;
      }
      bundle = build_bundle(p, x, eps, cfg.m, rng, &*center_grad);
      counters.g_eval += cfg.m;
    } catch (const NondifferentiableSampleError&) {
      result.trace.push_back(std::move(rec));
      result.report = finalize(counters, qp, StopReason::nondiff_sample, false, k + 1, f_x,
                               std::move(x), elapsed());
      return result;
    }

    Vector g;
    if (cfg.method == Method::gsi) {
      g = ideal_vector(bundle);
      rec.g_ideal_norm = g.norm();
      rec.direction_kind = DirectionKind::ideal;
      if (rec.g_ideal_norm <= nu) {
        g = min_norm_qp(bundle, cfg.qp_tol, &qp).g;
        rec.qp_solved = true;
        rec.direction_kind = DirectionKind::steepest_approx;
      }
    } else {
      g = min_norm_qp(bundle, cfg.qp_tol, &qp).g;
      rec.qp_solved = true;
      rec.direction_kind = DirectionKind::steepest_approx;
    }
    rec.g_norm = g.norm();

    if (rec.g_norm <= nu) {
      nu *= cfg.theta;
      eps *= cfg.mu;
      rec.null_reason = NullReason::stationarity_shrink;
      rec.direction_kind = rec.qp_solved ? DirectionKind::steepest_approx : DirectionKind::ideal;
      result.trace.push_back(std::move(rec));
      continue;  // x unchanged; center gradient stays cached
    }

    ++counters.direction_iters;
    if (!rec.qp_solved) ++counters.nii;
    const Vector d = descent_direction(g);

    LineSearchOutcome ls;
    if (cfg.line_search == LineSearchMode::bals) {
      ls = bals(p, x, f_x, g, d, cfg.gamma, cfg.armijo_c, cfg.max_backtracks);
      counters.f_eval += ls.f_evals;
      if (ls.exhausted) {
        eps *= cfg.mu;
        rec.null_reason = NullReason::bals_exhausted;
        result.trace.push_back(std::move(rec));
        continue;
      }
    } else {
      ls = lbals(p, x, f_x, g, d, eps, cfg.gamma, cfg.armijo_c);
      counters.f_eval += ls.f_evals;
      if (ls.null_step) {
        rec.null_reason = NullReason::lbals_null;
        result.trace.push_back(std::move(rec));
        continue;
      }
    }

    Vector x_next = x + ls.t * d;
    double f_next = ls.f_new;
    if (!p.is_differentiable(x_next)) {
      try {
        PerturbationOutcome pert = perturb_iterate(p, x, f_x, ls.t, d, eps, g, cfg.armijo_c, rng);
        counters.f_eval += pert.f_evals;
        x_next = std::move(pert.x);
        f_next = pert.f;
        rec.perturbed = true;
      } catch (const PerturbationFailedError&) {
        result.trace.push_back(std::move(rec));
        result.report = finalize(counters, qp, StopReason::perturbation_failed, false, k + 1, f_x,
                                 std::move(x), elapsed());
        return result;
      }
    }

    rec.t = ls.t;
    rec.serious = true;
    ++counters.serious;
    x = std::move(x_next);
    f_x = f_next;
    center_grad.reset();
    result.trace.push_back(std::move(rec));
    // nu and eps carry over unchanged after a step
  }
}

RunResult gsi_run(const Problem& p, SolverConfig cfg, RngStream& rng,
                  const std::optional<StoppingRule>& target, const Vector* x0) {
  cfg.method = Method::gsi;
  return run_solver(p, cfg, rng, target, x0);
}

RunResult gs_run(const Problem& p, SolverConfig cfg, RngStream& rng,
                 const std::optional<StoppingRule>& target, const Vector* x0) {
  cfg.method = Method::gs;
  return run_solver(p, cfg, rng, target, x0);
}

}  // namespace gsopt
