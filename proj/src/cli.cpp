//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/cli.hpp"

#include "gsopt/bench.hpp"
#include "gsopt/problem.hpp"
#include "gsopt/solver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace gsopt {

namespace {

using nlohmann::json;

std::string default_out_dir() {
  if (const char* env = std::getenv("GSOPT_OUT")) return env;
  return "out";
}

ProblemInstance parse_instance(const std::string& selector) {
  const auto pos = selector.find(':');
  ProblemInstance inst;
  if (pos == std::string::npos) {
    inst.name = selector;
    const auto* entry = ProblemRegistry::builtin().find(inst.name);
    if (entry && !entry->scalable) inst.n = entry->fixed_n;
  } else {
    inst.name = selector.substr(0, pos);
    inst.n = std::stoi(selector.substr(pos + 1));
  }
  return inst;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Solver-parameter flags shared by `solve` and `bench`. Values left at
// their sentinel are filled from the per-scale defaults at run time.
struct ParamFlags {
  double eps0 = -1, nu0 = -1, mu = -1, theta = -1, gamma = -1, c = -1;
  int m = -1, max_iters = -1, max_backtracks = -1;
  double eps_opt = -1, nu_opt = -1, qp_tol = -1;
  std::string line_search;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps0", eps0, "initial sampling radius");
    cmd->add_option("--nu0", nu0, "initial stationarity tolerance");
    cmd->add_option("--mu", mu, "radius reduction factor in (0,1)");
    cmd->add_option("--theta", theta, "tolerance reduction factor in (0,1)");
    cmd->add_option("--gamma", gamma, "backtracking factor in (0,1)");
    cmd->add_option("--c", c, "sufficient-decrease parameter in (0,1)");
    cmd->add_option("--m", m, "sample size (default 2n)");
    cmd->add_option("--max-iters", max_iters, "iteration cap");
    cmd->add_option("--max-backtracks", max_backtracks, "backtracking cap");
    cmd->add_option("--eps-opt", eps_opt, "radius stopping tolerance");
    cmd->add_option("--nu-opt", nu_opt, "stationarity stopping tolerance");
    cmd->add_option("--qp-tol", qp_tol, "QP certificate tolerance");
    cmd->add_option("--line-search", line_search, "bals|lbals")
        ->check(CLI::IsMember({"bals", "lbals"}));
  }

  void merge_json(const json& j) {
    auto num = [&](const char* key, double& slot) {
      if (slot < 0 && j.contains(key)) slot = j[key].get<double>();
    };
    auto inum = [&](const char* key, int& slot) {
      if (slot < 0 && j.contains(key)) slot = j[key].get<int>();
    };
    num("eps0", eps0);
    num("nu0", nu0);
    num("mu", mu);
    num("theta", theta);
    num("gamma", gamma);
    num("c", c);
    inum("m", m);
    inum("max_iters", max_iters);
    inum("max_backtracks", max_backtracks);
    num("eps_opt", eps_opt);
    num("nu_opt", nu_opt);
    num("qp_tol", qp_tol);
    if (line_search.empty() && j.contains("line_search"))
      line_search = j["line_search"].get<std::string>();
  }

  SolverConfig resolve(int n) const {
    SolverConfig cfg = SolverConfig::defaults_for(n);
    if (eps0 >= 0) cfg.eps0 = eps0;
    if (nu0 >= 0) cfg.nu0 = nu0;
    if (mu >= 0) cfg.mu = mu;
    if (theta >= 0) cfg.theta = theta;
    if (gamma >= 0) cfg.gamma = gamma;
    if (c >= 0) cfg.armijo_c = c;
    if (m >= 0) cfg.m = m;
    if (max_iters >= 0) cfg.max_iters = max_iters;
    if (max_backtracks >= 0) cfg.max_backtracks = max_backtracks;
    if (eps_opt >= 0) cfg.eps_opt = eps_opt;
    if (nu_opt >= 0) cfg.nu_opt = nu_opt;
    if (qp_tol >= 0) cfg.qp_tol = qp_tol;
    if (line_search == "bals") cfg.line_search = LineSearchMode::bals;
    if (line_search == "lbals") cfg.line_search = LineSearchMode::lbals;
    cfg.validate();
    return cfg;
  }

  bool customized() const {
    return eps0 >= 0 || nu0 >= 0 || mu >= 0 || theta >= 0 || gamma >= 0 || c >= 0 || m >= 0 ||
           max_iters >= 0 || max_backtracks >= 0 || eps_opt >= 0 || nu_opt >= 0 || qp_tol >= 0 ||
           !line_search.empty();
  }
};

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  return json::parse(read_text_file(path));
}

int cmd_list_problems(const std::string& out_dir, bool write_json) {
  const auto& reg = ProblemRegistry::builtin();
  fmt::print("{:<22} {:<10} {:<9} {}\n", "name", "n", "type", "summary");
  for (const auto& e : reg.entries()) {
    std::string nfield = e.scalable ? fmt::format("n>={}", e.min_n) : fmt::format("{}", e.fixed_n);
    if (!e.supported_n.empty()) {
      nfield = "n in {";
      for (size_t i = 0; i < e.supported_n.size(); ++i)
        nfield += fmt::format("{}{}", i ? "," : "", e.supported_n[i]);
      nfield += "}";
    }
    fmt::print("{:<22} {:<10} {:<9} {}\n", e.name, nfield, e.convex ? "convex" : "nonconvex",
               e.summary);
  }
  if (write_json) {
    const std::string path = (std::filesystem::path(out_dir) / "problems.json").string();
    write_text_file(path, reg.catalog_json());
    fmt::print("wrote {}\n", path);
  }
  return 0;
}

int cmd_solve(const std::string& out_dir, const std::string& selector, int n_flag,
              const std::string& method, std::uint64_t seed, bool randomize_start, bool no_target,
              double stop_tol, const ParamFlags& params) {
  ProblemInstance inst = parse_instance(selector);
  if (n_flag > 0) inst.n = n_flag;
  const auto& reg = ProblemRegistry::builtin();
  const auto* entry = reg.find(inst.name);
  if (!entry) {
    fmt::print(stderr, "unknown problem '{}'\n", inst.name);
    return 2;
  }
  if (!entry->scalable) inst.n = entry->fixed_n;
  if (inst.n <= 0) {
    fmt::print(stderr, "problem '{}' is scalable; pass --n\n", inst.name);
    return 2;
  }
  const Problem p = reg.get(inst.name, inst.n);

  SolverConfig cfg = params.resolve(p.n);
  cfg.method = method == "gs" ? Method::gs : Method::gsi;
  cfg.seed = seed;

  std::optional<StoppingRule> target;
  if (!no_target)
    target = StoppingRule{p.f_star, stop_tol > 0 ? stop_tol : SolverConfig::stop_tol_for(p.n)};

  Vector start = p.x0;
  if (randomize_start) {
    RngStream start_rng(mix_seed(seed, "start"));
    start = draw_start(p, start_rng);
  }
  RngStream rng(mix_seed(seed, "run"));
  const RunResult rr = run_solver(p, cfg, rng, target, &start);

  const std::string stem = fmt::format("solve_{}_{}_{}_{}", inst.name, inst.n,
                                       to_string(cfg.method), seed);
  const auto dir = std::filesystem::path(out_dir);
  const std::string report_path = (dir / (stem + ".report.json")).string();
  const std::string trace_path = (dir / (stem + ".trace.jsonl")).string();
  write_text_file(report_path, report_json(p, cfg, target, rr.report));
  write_text_file(trace_path, trace_jsonl(rr.trace));

  fmt::print("{} {} n={} seed={}: {} after {} iters, f={:.10g}, pii={:.3f}, qp={}, wrote {}\n",
             to_string(cfg.method), inst.name, inst.n, seed,
             rr.report.success ? "success" : fmt::format("failure ({})",
                                                         to_string(rr.report.stop_reason)),
             rr.report.iters, rr.report.final_f, rr.report.pii, rr.report.qp_count, report_path);
  return rr.report.success ? 0 : 1;
}

std::vector<ProblemInstance> scale_problems(const std::string& scale, int n_medium, int n_large) {
  if (scale == "small") {
    return {{"ql", 2},      {"wolfe", 2},  {"crescent", 2},
            {"mifflin2", 2}, {"rosenbrock", 2}, {"spiral", 2}};
  }
  if (scale == "medium") {
    const int n = n_medium > 0 ? n_medium : 100;
    return {{"l1hilb", n},          {"mxhilb", n},
            {"chained_lq", n},      {"chained_cb3_1", n},
            {"chained_cb3_2", n},   {"active_faces", n},
            {"brown2", n},          {"chained_mifflin2", n},
            {"chained_crescent_1", n}, {"chained_crescent_2", n}};
  }
  const int n = n_large > 0 ? n_large : 500;
  return {{"tilted_norm", n}, {"maxq", n},
          {"chained_lq", n},  {"ncr1", n},
          {"ncr2", n},        {"chained_mifflin2", n},
          {"chained_crescent_1", n}, {"chained_crescent_2", n}};
}

int cmd_bench(const std::string& out_dir, const std::string& scale, const std::string& problems,
              const std::string& methods, int runs, std::uint64_t base_seed, int jobs, int n_flag,
              double stop_tol, const std::string& metrics, bool svg, const ParamFlags& params) {
  SuiteConfig sc;
  if (!problems.empty()) {
    for (const std::string& selector : split_list(problems)) {
      ProblemInstance inst = parse_instance(selector);
      if (inst.n <= 0 && n_flag > 0) inst.n = n_flag;
      if (inst.n <= 0) {
        fmt::print(stderr, "instance '{}' needs a dimension (name:n or --n)\n", selector);
        return 2;
      }
      sc.problems.push_back(inst);
    }
  } else {
    sc.problems = scale_problems(scale, n_flag, n_flag);
  }
  sc.methods.clear();
  const std::string ms = methods.empty() ? "both" : methods;
  if (ms == "both" || ms == "gs,gsi" || ms == "gsi,gs") {
    sc.methods = {Method::gs, Method::gsi};
  } else {
    for (const std::string& m : split_list(ms)) {
      if (m == "gs") sc.methods.push_back(Method::gs);
      else if (m == "gsi") sc.methods.push_back(Method::gsi);
      else {
        fmt::print(stderr, "unknown method '{}'\n", m);
        return 2;
      }
    }
  }
  sc.runs_per_problem = runs;
  sc.base_seed = base_seed;
  sc.jobs = jobs;
  if (stop_tol > 0) sc.stop_tol_override = stop_tol;
  if (params.customized()) {
    // A single explicit config applies to the whole suite; per-scale
    // defaults are resolved against the first instance's dimension.
    const auto& reg = ProblemRegistry::builtin();
    const Problem probe = reg.get(sc.problems.front().name, sc.problems.front().n);
    sc.config_override = params.resolve(probe.n);
  }

  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), sc);

  std::vector<std::string> metric_list = split_list(metrics);
  for (const std::string& m : metric_list) {
    if (!is_profile_metric(m)) {
      fmt::print(stderr, "unknown profile metric '{}'\n", m);
      return 2;
    }
  }
  const auto written = emit_reports(suite, out_dir, metric_list, svg);

  int failures = 0;
  for (const auto& row : suite.rows) failures += row.report.success ? 0 : 1;
  fmt::print("{} runs ({} problems x {} methods x {} seeds), {} failures\n", suite.rows.size(),
             sc.problems.size(), sc.methods.size(), sc.runs_per_problem, failures);
  fmt::print("wrote {} files under {}\n", written.size(), out_dir);
  return 0;
}

int cmd_profile(const std::string& out_dir, const std::string& input, const std::string& metrics,
                bool svg) {
  const CsvTable table = read_csv_file(input);
  const auto dir = std::filesystem::path(out_dir);
  for (const std::string& metric : split_list(metrics)) {
    const ProfileTable t = profile_from_csv(table, metric);
    for (const auto& w : t.warnings) fmt::print(stderr, "warning: {}\n", w);
    const std::string data_path = (dir / fmt::format("profile_{}.csv", metric)).string();
    write_text_file(data_path, profile_data_csv(t));
    fmt::print("wrote {}\n", data_path);
    if (svg) {
      const std::string svg_path = (dir / fmt::format("profile_{}.svg", metric)).string();
      write_text_file(svg_path, profile_svg(t));
      fmt::print("wrote {}\n", svg_path);
    }
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"gradient-sampling solvers for nonsmooth optimization"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string out_dir = default_out_dir();
  std::string config_path;
  app.add_option("--out", out_dir, "output directory (env GSOPT_OUT overrides the default)");
  app.add_option("--config", config_path, "JSON file with default parameter values");

  auto* list_cmd = app.add_subcommand("list-problems", "print the problem catalog");
  bool list_json = false;
  list_cmd->add_flag("--json", list_json, "also write problems.json to the output directory");

  auto* solve_cmd = app.add_subcommand("solve", "run one problem/method/seed");
  std::string solve_problem, solve_method = "gsi";
  int solve_n = 0;
  std::uint64_t solve_seed = 0;
  bool randomize_start = false, no_target = false;
  double solve_stop_tol = 0.0;
  solve_cmd->add_option("--problem", solve_problem, "problem name or name:n")->required();
  solve_cmd->add_option("--n", solve_n, "dimension for scalable problems");
  solve_cmd->add_option("--method", solve_method, "gs|gsi")
      ->check(CLI::IsMember({"gs", "gsi"}));
  solve_cmd->add_option("--seed", solve_seed, "run seed");
  solve_cmd->add_flag("--randomize-start", randomize_start,
                      "draw the start from the ball of radius ||x0||/n around x0");
  solve_cmd->add_flag("--no-target", no_target, "disable the known-minimum stopping rule");
  solve_cmd->add_option("--stop-tol", solve_stop_tol, "relative stopping tolerance");
  ParamFlags solve_params;
  solve_params.attach(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "run a seeded multi-problem suite");
  std::string bench_scale = "small", bench_problems, bench_methods = "both";
  std::string bench_metrics = "qp_time,cpu_time,qp_count";
  int bench_runs = 5, bench_jobs = 0, bench_n = 0;
  std::uint64_t bench_seed = 0;
  double bench_stop_tol = 0.0;
  bool bench_svg = false;
  bench_cmd->add_option("--scale", bench_scale, "small|medium|large preset suite")
      ->check(CLI::IsMember({"small", "medium", "large"}));
  bench_cmd->add_option("--problems", bench_problems, "comma list of name[:n] (overrides --scale)");
  bench_cmd->add_option("--methods", bench_methods, "gs|gsi|both");
  bench_cmd->add_option("--runs", bench_runs, "seeded runs per (problem, method)");
  bench_cmd->add_option("--base-seed", bench_seed, "base seed for run derivation");
  bench_cmd->add_option("--jobs", bench_jobs, "parallel runs (0 = all logical processors)");
  bench_cmd->add_option("--n", bench_n, "dimension for scalable instances");
  bench_cmd->add_option("--stop-tol", bench_stop_tol, "relative stopping tolerance override");
  bench_cmd->add_option("--metrics", bench_metrics, "profile metrics to emit");
  bench_cmd->add_flag("--svg", bench_svg, "emit profile SVGs");
  ParamFlags bench_params;
  bench_params.attach(bench_cmd);

  auto* profile_cmd = app.add_subcommand("profile", "build profiles from an existing results.csv");
  std::string profile_input, profile_metrics = "qp_time";
  bool profile_svg_flag = false;
  profile_cmd->add_option("--input", profile_input, "results.csv path")->required();
  profile_cmd->add_option("--metric", profile_metrics, "comma list of metrics");
  profile_cmd->add_flag("--svg", profile_svg_flag, "emit SVGs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    json file_cfg = load_config_file(config_path);
    solve_params.merge_json(file_cfg);
    bench_params.merge_json(file_cfg);
    if (file_cfg.contains("out") && !app.count("--out")) out_dir = file_cfg["out"].get<std::string>();

    if (list_cmd->parsed()) return cmd_list_problems(out_dir, list_json);
    if (solve_cmd->parsed()) {
      if (!solve_cmd->count("--seed") && file_cfg.contains("seed"))
        solve_seed = file_cfg["seed"].get<std::uint64_t>();
      return cmd_solve(out_dir, solve_problem, solve_n, solve_method, solve_seed, randomize_start,
                       no_target, solve_stop_tol, solve_params);
    }
    if (bench_cmd->parsed())
      return cmd_bench(out_dir, bench_scale, bench_problems, bench_methods, bench_runs, bench_seed,
                       bench_jobs, bench_n, bench_stop_tol, bench_metrics, bench_svg, bench_params);
    if (profile_cmd->parsed())
      return cmd_profile(out_dir, profile_input, profile_metrics, profile_svg_flag);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gsopt
