//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/bench.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsopt {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ProblemInstance::key() const { return fmt::format("{}:{}", name, n); }

Vector draw_start(const Problem& p, RngStream& rng) {
  const double radius = p.x0.norm() / p.n;
  for (int i = 0; i < 1000; ++i) {
    Vector s = p.x0 + radius * sample_unit_ball(rng, p.n);
    if (p.is_differentiable(s)) return s;
  }
  throw std::runtime_error(fmt::format("{}: no differentiable start found", p.name));
}

SuiteResult run_suite(const ProblemRegistry& reg, const SuiteConfig& cfg) {
  if (cfg.problems.empty()) throw std::invalid_argument("run_suite: no problems selected");
  if (cfg.runs_per_problem < 1) throw std::invalid_argument("run_suite: runs_per_problem < 1");

  struct Job {
    ProblemInstance instance;
    Method method;
    int seed_index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& inst : cfg.problems) {
    for (int s = 0; s < cfg.runs_per_problem; ++s) {
      const std::uint64_t seed = mix_seed(cfg.base_seed, inst.key(), s);
      for (Method m : cfg.methods) jobs.push_back({inst, m, s, seed});
    }
  }

  SuiteResult result;
  result.rows.resize(jobs.size());

  int nthreads = cfg.jobs;
#ifdef _OPENMP
  if (nthreads <= 0) nthreads = omp_get_max_threads();
#else
  nthreads = 1;
#endif

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
    const Job& job = jobs[i];
    RunRow& row = result.rows[i];
    row.problem = job.instance.key();
    row.n = job.instance.n;
    row.method = job.method;
    row.seed = job.seed;
    row.seed_index = job.seed_index;

    const Problem p = reg.get(job.instance.name, job.instance.n);
    SolverConfig sc = cfg.config_override ? *cfg.config_override : SolverConfig::defaults_for(p.n);
    sc.method = job.method;
    sc.seed = job.seed;
    row.config = sc;
    row.target = {p.f_star,
                  cfg.stop_tol_override ? *cfg.stop_tol_override : SolverConfig::stop_tol_for(p.n)};

    RngStream start_rng(mix_seed(job.seed, "start"));
    row.start = draw_start(p, start_rng);

    // A run that dies (QP stagnation, failed perturbation cap) becomes a
    // marked failure row; the suite itself never aborts.
    try {
      RngStream run_rng(mix_seed(job.seed, "run"));
      RunResult rr = run_solver(p, sc, run_rng, row.target, &row.start);
      row.report = std::move(rr.report);
      if (cfg.keep_traces) row.trace = std::move(rr.trace);
    } catch (const std::exception& e) {
      row.report = RunReport{};
      row.report.success = false;
      row.report.stop_reason = StopReason::solver_error;
      row.report.error = e.what();
      row.report.final_x = row.start;
      row.report.final_f = p.f(row.start);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

ProfileTable performance_profile(const std::string& metric, const std::vector<std::string>& solvers,
                                 const std::vector<std::string>& instances, const Matrix& values) {
  if (solvers.size() < 2) throw std::invalid_argument("performance_profile: need >= 2 solvers");
  if (values.rows() != static_cast<long>(solvers.size()) ||
      values.cols() != static_cast<long>(instances.size()))
    throw std::invalid_argument("performance_profile: matrix shape mismatch");

  const double inf = std::numeric_limits<double>::infinity();
  ProfileTable t;
  t.metric = metric;
  t.solvers = solvers;

  // Drop instances where nobody produced a finite metric.
  std::vector<int> kept;
  for (int j = 0; j < values.cols(); ++j) {
    if (values.col(j).minCoeff() < inf) {
      kept.push_back(j);
    } else {
      t.warnings.push_back(fmt::format("instance {} failed for every solver", instances[j]));
    }
  }
  const int nsol = static_cast<int>(solvers.size());
  const int ninst = static_cast<int>(kept.size());
  t.ratios.resize(nsol, ninst);
  t.instances.reserve(ninst);
  for (int jj = 0; jj < ninst; ++jj) {
    const int j = kept[jj];
    t.instances.push_back(instances[j]);
    const double best = values.col(j).minCoeff();
    for (int s = 0; s < nsol; ++s) {
      const double v = values(s, j);
      if (!(v < inf)) {
        t.ratios(s, jj) = inf;
      } else if (v == best) {
        t.ratios(s, jj) = 1.0;
      } else {
        t.ratios(s, jj) = best > 0.0 ? v / best : inf;
      }
    }
  }

  // Step-function samples on the union of finite ratios.
  std::set<double> taus{1.0};
  for (int s = 0; s < nsol; ++s)
    for (int j = 0; j < ninst; ++j)
      if (t.ratios(s, j) < inf) taus.insert(t.ratios(s, j));
  for (int s = 0; s < nsol; ++s) {
    ProfileCurve c;
    c.solver = solvers[s];
    for (double tau : taus) {
      int count = 0;
      for (int j = 0; j < ninst; ++j) count += (t.ratios(s, j) <= tau);
      c.points.emplace_back(tau, ninst > 0 ? double(count) / ninst : 0.0);
    }
    t.curves.push_back(std::move(c));
  }
  return t;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string results_csv_header() {
  return "problem,method,seed,iters,nii,pii,f_eval,g_eval,qp_count,qp_time,cpu_time,success";
}

std::string results_csv(const SuiteResult& suite) {
  std::string out = results_csv_header() + "\n";
  for (const RunRow& r : suite.rows) {
    out += fmt::format("{},{},{},{},{},{:.6f},{},{},{},{:.9e},{:.9e},{}\n", r.problem,
                       to_string(r.method), r.seed, r.report.iters, r.report.nii, r.report.pii,
                       r.report.f_eval, r.report.g_eval, r.report.qp_count, r.report.qp_time,
                       r.report.wall_time, r.report.success ? 1 : 0);
  }
  return out;
}

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur += ch;
      }
    }
    fields.push_back(cur);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) { return parse_csv(read_text_file(path)); }

bool is_profile_metric(const std::string& name) {
  static const std::set<std::string> metrics{"cpu_time", "qp_time", "qp_count",
                                             "f_eval",   "g_eval",  "iters"};
  return metrics.count(name) > 0;
}

ProfileTable profile_from_csv(const CsvTable& table, const std::string& metric) {
  if (!is_profile_metric(metric))
    throw std::invalid_argument(fmt::format("unknown profile metric '{}'", metric));
  const int c_problem = table.column("problem");
  const int c_method = table.column("method");
  const int c_seed = table.column("seed");
  const int c_metric = table.column(metric);
  const int c_success = table.column("success");
  if (c_problem < 0 || c_method < 0 || c_seed < 0 || c_metric < 0 || c_success < 0)
    throw std::invalid_argument("profile_from_csv: missing required columns");

  std::vector<std::string> solvers;
  std::vector<std::string> instances;
  std::map<std::string, int> solver_ix, instance_ix;
  for (const auto& row : table.rows) {
    const std::string inst = row[c_problem] + "#" + row[c_seed];
    if (!solver_ix.count(row[c_method])) {
      solver_ix[row[c_method]] = static_cast<int>(solvers.size());
      solvers.push_back(row[c_method]);
    }
    if (!instance_ix.count(inst)) {
      instance_ix[inst] = static_cast<int>(instances.size());
      instances.push_back(inst);
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  Matrix values = Matrix::Constant(solvers.size(), instances.size(), inf);
  for (const auto& row : table.rows) {
    const std::string inst = row[c_problem] + "#" + row[c_seed];
    const bool ok = row[c_success] == "1" || row[c_success] == "true";
    if (!ok) continue;
    values(solver_ix[row[c_method]], instance_ix[inst]) = std::stod(row[c_metric]);
  }
  return performance_profile(metric, solvers, instances, values);
}

std::string profile_data_csv(const ProfileTable& t) {
  std::string out = "solver,tau,rho\n";
  for (const auto& c : t.curves)
    for (const auto& [tau, rho] : c.points)
      out += fmt::format("{},{:.17g},{:.17g}\n", c.solver, tau, rho);
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

std::string profile_svg(const ProfileTable& t) {
  const double W = 640, H = 420, ml = 60, mr = 20, mt = 36, mb = 46;
  const double pw = W - ml - mr, ph = H - mt - mb;
  double tau_max = 1.0;
  for (const auto& c : t.curves)
    for (const auto& [tau, rho] : c.points) tau_max = std::max(tau_max, tau);
  tau_max = std::max(tau_max * 1.02, 1.1);
  auto xmap = [&](double tau) { return ml + (tau - 1.0) / (tau_max - 1.0) * pw; };
  auto ymap = [&](double rho) { return mt + (1.0 - rho) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};
  std::string s;
  s += fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      W, H, W, H);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);
  s += fmt::format(
      "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"15\">performance profile: "
      "{}</text>\n",
      ml, t.metric);
  // axes
  s += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\" stroke=\"black\"/>\n",
      ml, mt, mt + ph, ml + pw);
  for (int i = 0; i <= 5; ++i) {
    const double rho = i / 5.0;
    s += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"end\">{:.1f}</text>\n",
        ml - 6, ymap(rho) + 4, rho);
    const double tau = 1.0 + (tau_max - 1.0) * i / 5.0;
    s += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"middle\">{:.2f}</text>\n",
        xmap(tau), mt + ph + 18, tau);
  }
  s += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
      "text-anchor=\"middle\">ratio to best</text>\n",
      ml + pw / 2, H - 10);

  int ci = 0;
  for (const auto& c : t.curves) {
    const char* color = colors[ci % 5];
    std::string pts;
    double prev_y = ymap(c.points.empty() ? 0.0 : c.points.front().second);
    bool first = true;
    for (const auto& [tau, rho] : c.points) {
      const double x = xmap(tau), y = ymap(rho);
      if (first) {
        pts += fmt::format("{:.2f},{:.2f} ", x, y);
        first = false;
      } else {
        pts += fmt::format("{:.2f},{:.2f} {:.2f},{:.2f} ", x, prev_y, x, y);  // step
      }
      prev_y = y;
    }
    pts += fmt::format("{:.2f},{:.2f}", ml + pw, prev_y);
    s += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"/>\n",
                     pts, color);
    s += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"4\" fill=\"{}\"/>"
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        ml + pw - 110, mt + 12 + 18 * ci, color, ml + pw - 90, mt + 17 + 18 * ci, c.solver);
    ++ci;
  }
  s += "</svg>\n";
  return s;
}

// ---------------------------------------------------------------------------
// JSON reports
// ---------------------------------------------------------------------------

namespace {
json config_json(const SolverConfig& c) {
  return json{{"eps0", c.eps0},
              {"nu0", c.nu0},
              {"mu", c.mu},
              {"theta", c.theta},
              {"gamma", c.gamma},
              {"c", c.armijo_c},
              {"m", c.m},
              {"eps_opt", c.eps_opt},
              {"nu_opt", c.nu_opt},
              {"max_iters", c.max_iters},
              {"max_backtracks", c.max_backtracks},
              {"line_search", to_string(c.line_search)},
              {"method", to_string(c.method)},
              {"seed", c.seed},
              {"qp_tol", c.qp_tol}};
}

json report_body(const RunReport& r) {
  json j{{"iters", r.iters},
         {"nii", r.nii},
         {"direction_iters", r.direction_iters},
         {"pii", r.pii},
         {"f_eval", r.f_eval},
         {"g_eval", r.g_eval},
         {"qp_count", r.qp_count},
         {"qp_time", r.qp_time},
         {"serious_count", r.serious_count},
         {"wall_time", r.wall_time},
         {"final_f", r.final_f},
         {"success", r.success},
         {"stop_reason", to_string(r.stop_reason)}};
  if (!r.error.empty()) j["error"] = r.error;
  j["final_x"] = std::vector<double>(r.final_x.data(), r.final_x.data() + r.final_x.size());
  return j;
}
}  // namespace

std::string run_report_json(const RunRow& row) {
  json j;
  j["problem"] = row.problem;
  j["n"] = row.n;
  j["method"] = to_string(row.method);
  j["seed"] = row.seed;
  j["seed_index"] = row.seed_index;
  j["config"] = config_json(row.config);
  j["target"] = {{"f_star", row.target.f_star}, {"tol", row.target.tol}};
  j["start"] = std::vector<double>(row.start.data(), row.start.data() + row.start.size());
  j["report"] = report_body(row.report);
  return j.dump(2) + "\n";
}

std::string report_json(const Problem& p, const SolverConfig& cfg,
                        const std::optional<StoppingRule>& target, const RunReport& report) {
  json j;
  j["problem"] = p.name;
  j["n"] = p.n;
  j["config"] = config_json(cfg);
  if (target) j["target"] = {{"f_star", target->f_star}, {"tol", target->tol}};
  j["report"] = report_body(report);
  return j.dump(2) + "\n";
}

std::string trace_jsonl(const std::vector<IterationRecord>& trace) {
  std::string out;
  for (const IterationRecord& r : trace) {
    json j{{"k", r.k},
           {"f", r.f_x},
           {"dir", to_string(r.direction_kind)},
           {"g_norm", r.g_norm},
           {"t", r.t},
           {"eps", r.eps},
           {"nu", r.nu},
           {"serious", r.serious},
           {"null_reason", to_string(r.null_reason)},
           {"perturbed", r.perturbed},
           {"qp_solved", r.qp_solved}};
    if (r.g_ideal_norm >= 0.0) j["g_ideal_norm"] = r.g_ideal_norm;
    j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
    out += j.dump() + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> emit_reports(const SuiteResult& suite, const std::string& out_dir,
                                      const std::vector<std::string>& profile_metrics,
                                      bool with_svg) {
  std::vector<std::string> written;
  const fs::path dir(out_dir);
  const std::string csv_path = (dir / "results.csv").string();
  write_text_file(csv_path, results_csv(suite));
  written.push_back(csv_path);

  for (const RunRow& row : suite.rows) {
    std::string name = row.problem;
    std::replace(name.begin(), name.end(), ':', '_');
    const std::string path =
        (dir / "reports" / fmt::format("{}_{}_{}.json", name, to_string(row.method), row.seed))
            .string();
    write_text_file(path, run_report_json(row));
    written.push_back(path);
  }

  // Profiles are rebuilt from the CSV just written so that the emitted
  // curves are exactly recomputable from that file.
  if (!profile_metrics.empty()) {
    const CsvTable table = read_csv_file(csv_path);
    for (const std::string& metric : profile_metrics) {
      const ProfileTable t = profile_from_csv(table, metric);
      const std::string data_path = (dir / fmt::format("profile_{}.csv", metric)).string();
      write_text_file(data_path, profile_data_csv(t));
      written.push_back(data_path);
      if (with_svg) {
        const std::string svg_path = (dir / fmt::format("profile_{}.svg", metric)).string();
        write_text_file(svg_path, profile_svg(t));
        written.push_back(svg_path);
      }
    }
  }
  return written;
}

}  // namespace gsopt
