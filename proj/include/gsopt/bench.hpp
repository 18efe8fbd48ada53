//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "gsopt/problem.hpp"
#include "gsopt/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace gsopt {

/// One (problem, dimension) cell of a suite.
struct ProblemInstance {
  std::string name;
  int n = 0;
  std::string key() const;  ///< "name:n", the instance id used in reports
};

struct SuiteConfig {
  std::vector<ProblemInstance> problems;
  std::vector<Method> methods{Method::gs, Method::gsi};
  int runs_per_problem = 5;
  std::uint64_t base_seed = 0;
  int jobs = 0;  ///< parallel runs; 0 = all hardware threads
  bool keep_traces = false;
  std::optional<SolverConfig> config_override;  ///< else scale-class defaults per n
  std::optional<double> stop_tol_override;      ///< else scale-class default
};

struct RunRow {
  std::string problem;  ///< instance key "name:n"
  int n = 0;
  Method method = Method::gsi;
  std::uint64_t seed = 0;  ///< derived per-run seed, equal across methods
  int seed_index = 0;
  Vector start;
  SolverConfig config;
  StoppingRule target;
  RunReport report;
  std::vector<IterationRecord> trace;  ///< kept only when SuiteConfig::keep_traces
};

struct SuiteResult {
  std::vector<RunRow> rows;
};

/// Start point for one seeded run: drawn uniformly from the ball around
/// the registered start with radius ||x0||/n, redrawn until differentiable.
Vector draw_start(const Problem& p, RngStream& rng);

/// Runs every (problem, method, seed) combination. Start points are paired:
/// both methods receive the bitwise-identical start for the same
/// (problem, seed index). Failed runs become marked rows, never aborts.
SuiteResult run_suite(const ProblemRegistry& reg, const SuiteConfig& cfg);

// ---------------------------------------------------------------------------
// Performance profiles
// ---------------------------------------------------------------------------

struct ProfileCurve {
  std::string solver;
  std::vector<std::pair<double, double>> points;  ///< (tau, fraction) step samples
};

struct ProfileTable {
  std::string metric;
  std::vector<std::string> solvers;
  std::vector<std::string> instances;
  Matrix ratios;  ///< solvers x instances; +inf marks failures
  std::vector<ProfileCurve> curves;
  std::vector<std::string> warnings;
};

/// Dolan-More profile of a solvers x instances metric matrix. `values`
/// holds positive metrics, +inf for failed runs. Instances where every
/// solver failed are dropped with a warning. Ties credit every solver
/// whose value equals the instance best.
ProfileTable performance_profile(const std::string& metric, const std::vector<std::string>& solvers,
                                 const std::vector<std::string>& instances, const Matrix& values);

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

/// Header of results.csv; golden-tested.
std::string results_csv_header();
std::string results_csv(const SuiteResult& suite);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  ///< -1 when absent
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

/// Known profile metrics: cpu_time, qp_time, qp_count, f_eval, g_eval, iters.
bool is_profile_metric(const std::string& name);

/// Builds the metric matrix for `metric` from a parsed results.csv, so
/// emitted curves are exactly reproducible from the file alone.
ProfileTable profile_from_csv(const CsvTable& table, const std::string& metric);

std::string profile_data_csv(const ProfileTable& t);
std::string profile_svg(const ProfileTable& t);

/// Self-describing JSON for one run (config, seed, start, metrics).
std::string run_report_json(const RunRow& row);
std::string report_json(const Problem& p, const SolverConfig& cfg,
                        const std::optional<StoppingRule>& target, const RunReport& report);

/// JSON-lines trace, one iteration record per line.
std::string trace_jsonl(const std::vector<IterationRecord>& trace);

/// Writes results.csv, per-run JSON reports, and per-metric profile data
/// (+ SVG) under out_dir. Returns the paths written.
std::vector<std::string> emit_reports(const SuiteResult& suite, const std::string& out_dir,
                                      const std::vector<std::string>& profile_metrics,
                                      bool with_svg);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gsopt
