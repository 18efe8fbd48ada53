//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/bench.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <sstream>

using namespace gsopt;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

SuiteConfig tiny_suite() {
  SuiteConfig sc;
  sc.problems = {{"mifflin2", 2}, {"crescent", 2}};
  sc.methods = {Method::gs, Method::gsi};
  sc.runs_per_problem = 3;
  sc.base_seed = 11;
  sc.jobs = 1;
  return sc;
}

std::string mask_timing_columns(const std::string& csv) {
  const CsvTable t = parse_csv(csv);
  const int c_qp = t.column("qp_time");
  const int c_cpu = t.column("cpu_time");
  std::string out;
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (int(i) == c_qp || int(i) == c_cpu) {
        out += "<t>";
      } else {
        out += row[i];
      }
      out += ',';
    }
    out += '\n';
  }
  return out;
}

/// Straight-line reimplementation of the profile curves from a parsed
/// results.csv, kept independent of performance_profile.
std::map<std::string, std::vector<std::pair<double, double>>> recompute_profile(
    const CsvTable& t, const std::string& metric) {
  const int cp = t.column("problem"), cm = t.column("method"), cs = t.column("seed"),
            cv = t.column(metric), ok = t.column("success");
  std::set<std::string> solver_set, instance_set;
  std::map<std::pair<std::string, std::string>, double> value;
  for (const auto& row : t.rows) {
    const std::string inst = row[cp] + "#" + row[cs];
    solver_set.insert(row[cm]);
    instance_set.insert(inst);
    value[{row[cm], inst}] = (row[ok] == "1") ? std::stod(row[cv]) : kInf;
  }
  // drop all-failed instances, compute per-instance ratios
  std::map<std::pair<std::string, std::string>, double> ratio;
  std::vector<std::string> kept;
  for (const auto& inst : instance_set) {
    double best = kInf;
    for (const auto& s : solver_set) best = std::min(best, value[{s, inst}]);
    if (!(best < kInf)) continue;
    kept.push_back(inst);
    for (const auto& s : solver_set) {
      const double v = value[{s, inst}];
      ratio[{s, inst}] = (v == best) ? 1.0 : (v < kInf && best > 0.0 ? v / best : kInf);
    }
  }
  std::set<double> taus{1.0};
  for (const auto& [key, r] : ratio)
    if (r < kInf) taus.insert(r);
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const auto& s : solver_set) {
    for (double tau : taus) {
      int cnt = 0;
      for (const auto& inst : kept) cnt += (ratio[{s, inst}] <= tau);
      curves[s].emplace_back(tau, kept.empty() ? 0.0 : double(cnt) / kept.size());
    }
  }
  return curves;
}

}  // namespace

TEST_CASE("start draws stay in the prescribed ball and are paired") {
  const Problem p = ProblemRegistry::builtin().get("wolfe");
  RngStream r1(9), r2(9);
  const Vector a = draw_start(p, r1);
  const Vector b = draw_start(p, r2);
  CHECK(oracle::bitwise_equal(a, b));
  CHECK((a - p.x0).norm() <= p.x0.norm() / p.n + 1e-15);
  CHECK(p.is_differentiable(a));
}

TEST_CASE("suite cardinality, pairing, and determinism") {
  const SuiteConfig sc = tiny_suite();
  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), sc);
  CHECK(suite.rows.size() == 2 * 2 * 3);

  // both methods at the same (problem, seed index) share the start bitwise
  std::map<std::pair<std::string, int>, Vector> starts;
  for (const auto& row : suite.rows) {
    const auto key = std::make_pair(row.problem, row.seed_index);
    if (starts.count(key)) {
      CHECK(oracle::bitwise_equal(starts[key], row.start));
    } else {
      starts[key] = row.start;
    }
  }

  // rerunning the suite reproduces the CSV except for timing columns
  const SuiteResult again = run_suite(ProblemRegistry::builtin(), sc);
  CHECK(mask_timing_columns(results_csv(suite)) == mask_timing_columns(results_csv(again)));

  // rows carry timing isolation and success coherent with the target
  for (const auto& row : suite.rows) {
    CHECK(row.report.qp_time <= row.report.wall_time);
    if (row.report.success) CHECK(row.target.met(row.report.final_f));
  }
}

TEST_CASE("suite runs concurrently without changing results") {
  SuiteConfig sc = tiny_suite();
  sc.jobs = 1;
  const std::string serial = mask_timing_columns(results_csv(run_suite(ProblemRegistry::builtin(), sc)));
  sc.jobs = 4;
  const std::string parallel =
      mask_timing_columns(results_csv(run_suite(ProblemRegistry::builtin(), sc)));
  CHECK(serial == parallel);
}

TEST_CASE("results csv header is pinned") {
  CHECK(results_csv_header() ==
        "problem,method,seed,iters,nii,pii,f_eval,g_eval,qp_count,qp_time,cpu_time,success");
}

TEST_CASE("profile of a hand matrix") {
  // solvers x instances; instance bests are 1 and 2, with a tie on the
  // second instance, which credits both solvers at tau = 1
  Matrix values(2, 2);
  values << 1.0, 2.0, 4.0, 2.0;
  const ProfileTable t =
      performance_profile("iters", {"s1", "s2"}, {"i1", "i2"}, values);
  REQUIRE(t.curves.size() == 2);
  const auto& c1 = t.curves[0].points;
  const auto& c2 = t.curves[1].points;
  REQUIRE(c1.size() == 2);  // tau grid {1, 4}
  CHECK(c1[0].first == 1.0);
  CHECK(c1[0].second == 1.0);  // s1 best everywhere (tie counts)
  CHECK(c1[1].second == 1.0);
  CHECK(c2[0].first == 1.0);
  CHECK(c2[0].second == 0.5);
  CHECK(c2[1].first == 4.0);
  CHECK(c2[1].second == 1.0);
}

TEST_CASE("profile with a dominant solver and failure handling") {
  Matrix values(2, 3);
  values << 1.0, 2.0, 3.0, 2.0, 4.0, kInf;
  const ProfileTable t = performance_profile("iters", {"a", "b"}, {"one", "two", "three"}, values);
  CHECK(t.curves[0].points.front().second == 1.0);  // rho_a(1) = 1
  CHECK(t.curves[1].points.front().second == 0.0);  // rho_b(1) = 0
  // b's curve plateaus at its success fraction 2/3
  CHECK(t.curves[1].points.back().second == doctest::Approx(2.0 / 3.0));

  // an instance everyone fails is dropped with a warning
  Matrix bad(2, 2);
  bad << 1.0, kInf, 2.0, kInf;
  const ProfileTable t2 = performance_profile("iters", {"a", "b"}, {"one", "two"}, bad);
  CHECK(t2.instances.size() == 1);
  CHECK(t2.warnings.size() == 1);

  CHECK_THROWS_AS(performance_profile("iters", {"solo"}, {"one"}, Matrix::Ones(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("profile round-trips exactly through the csv") {
  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), tiny_suite());
  const std::string csv = results_csv(suite);
  const CsvTable table = parse_csv(csv);
  for (const std::string metric : {"iters", "f_eval", "qp_count", "qp_time"}) {
    const ProfileTable t = profile_from_csv(table, metric);
    const auto expect = recompute_profile(table, metric);
    REQUIRE(t.curves.size() == expect.size());
    for (const auto& curve : t.curves) {
      const auto& ref = expect.at(curve.solver);
      REQUIRE(curve.points.size() == ref.size());
      for (size_t i = 0; i < ref.size(); ++i) {
        CHECK(curve.points[i].first == ref[i].first);    // exact, not approximate
        CHECK(curve.points[i].second == ref[i].second);
      }
    }
  }
  CHECK_THROWS_AS(profile_from_csv(table, "nonsense"), std::invalid_argument);
}

TEST_CASE("emitted files: csv, per-run json, profile data, svg") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gsopt_bench_test";
  fs::remove_all(dir);
  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), tiny_suite());
  const auto written = emit_reports(suite, dir.string(), {"qp_count", "cpu_time"}, true);
  CHECK(fs::exists(dir / "results.csv"));
  CHECK(fs::exists(dir / "profile_qp_count.csv"));
  CHECK(fs::exists(dir / "profile_qp_count.svg"));
  CHECK(fs::exists(dir / "profile_cpu_time.svg"));
  CHECK(written.size() == 1 + suite.rows.size() + 4);

  // every per-run report parses and embeds config and seed
  for (const auto& row : suite.rows) {
    const auto j = nlohmann::json::parse(run_report_json(row));
    CHECK(j["seed"].get<std::uint64_t>() == row.seed);
    CHECK(j["config"]["m"].get<int>() == row.config.m);
    CHECK(j["config"]["seed"].get<std::uint64_t>() == row.seed);
    CHECK(j["report"]["success"].is_boolean());
    CHECK(j["start"].size() == size_t(row.n));
  }

  // the SVG is well-formed XML: every opened tag closes in order
  const std::string svg = read_text_file((dir / "profile_qp_count.svg").string());
  std::vector<std::string> stack;
  size_t pos = 0;
  bool ok = true;
  while ((pos = svg.find('<', pos)) != std::string::npos) {
    const size_t end = svg.find('>', pos);
    REQUIRE(end != std::string::npos);
    std::string tag = svg.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    if (tag.back() == '/') continue;  // self-closing
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) {
        ok = false;
        break;
      }
      stack.pop_back();
    } else {
      stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
    }
  }
  CHECK(ok);
  CHECK(stack.empty());
  fs::remove_all(dir);
}

TEST_CASE("both methods agree on success for a convex chain") {
  SuiteConfig sc;
  sc.problems = {{"chained_lq", 50}};
  sc.methods = {Method::gs, Method::gsi};
  sc.runs_per_problem = 5;
  sc.base_seed = 71;
  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), sc);
  std::map<int, bool> gs_ok, gsi_ok;
  for (const auto& row : suite.rows)
    (row.method == Method::gs ? gs_ok : gsi_ok)[row.seed_index] = row.report.success;
  for (int s = 0; s < 5; ++s) {
    CHECK(gs_ok[s]);
    CHECK(gsi_ok[s]);
  }
}

TEST_CASE("convex runs never dip below the registered minimum") {
  SuiteConfig sc;
  sc.problems = {{"wolfe", 2}, {"chained_lq", 12}, {"maxq", 10}};
  sc.methods = {Method::gs, Method::gsi};
  sc.runs_per_problem = 2;
  sc.base_seed = 3;
  sc.keep_traces = true;
  const SuiteResult suite = run_suite(ProblemRegistry::builtin(), sc);
  for (const auto& row : suite.rows) {
    const double floor = row.target.f_star - 1e-9 * (1.0 + std::abs(row.target.f_star));
    for (const auto& rec : row.trace) CHECK(rec.f_x >= floor);
    CHECK(row.report.final_f >= floor);
  }
}

TEST_CASE("trace jsonl lines parse and carry the schema") {
  const Problem p = oracle::make_l1(2);
  SolverConfig cfg = SolverConfig::defaults_for(2);
  RngStream rng(2);
  const Vector x0{{2.0, 3.0}};
  const RunResult rr = run_solver(p, cfg, rng, StoppingRule{0.0, 5e-4}, &x0);
  const std::string lines = trace_jsonl(rr.trace);
  std::istringstream in(lines);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("k"));
    CHECK(j.contains("f"));
    CHECK(j.contains("eps"));
    CHECK(j.contains("nu"));
    CHECK(j.contains("t"));
    CHECK(j.contains("serious"));
    CHECK(j.contains("null_reason"));
    CHECK(j.contains("qp_solved"));
    CHECK(j["x"].size() == 2);
    ++count;
  }
  CHECK(count == rr.report.iters);
}
