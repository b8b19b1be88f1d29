// Copyright 2026 The crmvip Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// crmvip command line: generate, solve, bench, check.
//
// Exit codes: 0 success, 1 projection failure, 2 bad arguments or input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crmvip/crmvip.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kProjectionFailure = 1;
constexpr int kBadArguments = 2;

namespace fs = std::filesystem;
using namespace crmvip;

// "5x2,10x5" -> {(5,2), (10,5)}
std::vector<Dims> parse_dims(const std::string& text) {
  std::vector<Dims> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) {
      throw InvalidArgumentError("dims entries look like NxM, got '" + item + "'");
    }
    try {
      const int n = std::stoi(item.substr(0, x));
      const int m = std::stoi(item.substr(x + 1));
      if (n < 1 || m < 1) throw InvalidArgumentError("dims must be positive");
      out.emplace_back(n, m);
    } catch (const std::logic_error&) {
      throw InvalidArgumentError("bad dims entry '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgumentError("empty --dims");
  return out;
}

std::vector<Algorithm> parse_solvers(const std::string& text) {
  std::vector<Algorithm> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(algorithm_from_string(item));
  if (out.empty()) throw InvalidArgumentError("empty --solvers");
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InvalidArgumentError("cannot create directory '" + dir + "'");
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write '" + path.string() + "'");
  return out;
}

struct GenerateArgs {
  int example = 1;
  std::string scenario = "A";
  std::uint64_t seed = 0;
  std::string out;
  std::string dims;
  std::optional<int> instances;
};

int run_generate(const GenerateArgs& a) {
  const Scenario sc = make_scenario(scenario_from_string(a.scenario));
  RunOptions opts;
  if (!a.dims.empty()) opts.dims = parse_dims(a.dims);
  opts.instances = a.instances;
  ensure_dir(a.out);
  for (const Instance& inst : generate_instances(sc, a.example, a.seed, opts)) {
    const std::string name = "instance_ex" + std::to_string(inst.example) + "_" +
                             inst.scenario + "_n" + std::to_string(inst.n) + "_m" +
                             std::to_string(inst.m) + "_" +
                             std::to_string(inst.index) + ".json";
    write_json_file((fs::path(a.out) / name).string(), to_json(inst));
    std::cout << (fs::path(a.out) / name).string() << '\n';
  }
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string solver;
  double eps = 1e-6;
  long max_iter = 100'000;
  double theta = 1.0;
  std::string trace;
  std::string out;
  bool no_check = false;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = instance_from_json(read_json_file(a.instance));
  SolverConfig cfg;
  cfg.algorithm = algorithm_from_string(a.solver);
  cfg.tolerance = a.eps;
  cfg.max_iterations = a.max_iter;
  cfg.theta = a.theta;
  cfg.seed = inst.seed;
  cfg.record_history = !a.trace.empty();
  cfg.validate();

  SolveResult r = solve(inst.op, inst.feasible_set, cfg, inst.initial_point);
  int code = r.status == SolveStatus::ProjectionFailure ? kProjectionFailure : kOk;
  if (!a.no_check && code == kOk) {
    try {
      const SolutionCheck c = check_solution(r.final_point, inst.op, inst.feasible_set);
      r.natural_residual = c.natural_residual;
      r.feasibility = c.feasibility;
    } catch (const ProjectionFailure& e) {
      std::cerr << "check: " << e.what() << '\n';
      code = kProjectionFailure;
    }
  }
  if (!a.trace.empty()) {
    std::ofstream trace = open_out(a.trace);
    write_trace_csv(trace, r);
  }
  Json doc = to_json(r);
  doc["solver"] = std::string(to_string(cfg.algorithm));
  if (a.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(a.out, doc);
  }
  return code;
}

struct BenchArgs {
  int example = 1;
  std::string scenario = "A";
  std::uint64_t seed = 0;
  std::string out;
  int threads = 1;
  int reps = 3;
  std::string dims;
  std::optional<int> instances;
  std::string solvers;
  bool no_check = false;
};

int run_bench(const BenchArgs& a) {
  const Scenario sc = make_scenario(scenario_from_string(a.scenario));
  RunOptions opts;
  opts.threads = a.threads;
  opts.repetitions = a.reps;
  opts.check = !a.no_check;
  if (!a.dims.empty()) opts.dims = parse_dims(a.dims);
  opts.instances = a.instances;
  if (!a.solvers.empty()) opts.solvers = parse_solvers(a.solvers);
  family_for_example(a.example);
  ensure_dir(a.out);

  const std::vector<ResultRow> rows = run_scenario(sc, a.example, a.seed, opts);
  const fs::path dir(a.out);
  {
    std::ofstream out = open_out(dir / "rows.csv");
    write_rows_csv(out, rows);
  }
  {
    std::ofstream out = open_out(dir / "medians.csv");
    write_median_csv(out, median_table(rows));
  }
  {
    std::ofstream out = open_out(dir / "speedups.csv");
    const bool has_ref = std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) {
      return r.solver == Algorithm::CrmVip1;
    });
    if (has_ref) {
      write_speedup_csv(out, speedup_table(rows));
    } else {
      out << "# reference solver " << to_string(Algorithm::CrmVip1)
          << " not run\nscenario,example,n,m,solver,speedup\n";
    }
  }
  std::size_t distinct = 0;
  {
    std::vector<Algorithm> seen;
    for (const ResultRow& r : rows)
      if (std::find(seen.begin(), seen.end(), r.solver) == seen.end())
        seen.push_back(r.solver);
    distinct = seen.size();
  }
  for (const auto& [metric, name] :
       {std::pair{ProfileMetric::Iterations, "profile_iter.csv"},
        std::pair{ProfileMetric::Time, "profile_time.csv"}}) {
    std::ofstream out = open_out(dir / name);
    if (distinct >= 2) {
      write_profile_csv(out, performance_profile(rows, metric));
    } else {
      out << "# profiles need at least two solvers\nsolver,tau,rho\n";
    }
  }

  bool failure = false;
  for (const ResultRow& r : rows) {
    if (r.status == SolveStatus::ProjectionFailure) failure = true;
  }
  std::cout << rows.size() << " rows written to " << dir.string() << '\n';
  return failure ? kProjectionFailure : kOk;
}

struct CheckArgs {
  std::string instance;
  std::string point;
};

int run_check(const CheckArgs& a) {
  const Instance inst = instance_from_json(read_json_file(a.instance));
  const Vector x = point_from_json(read_json_file(a.point));
  const SolutionCheck c = check_solution(x, inst.op, inst.feasible_set);
  const Json doc = {{"natural_residual", c.natural_residual},
                    {"feasibility", c.feasibility}};
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circumcentered-reflection solvers for variational inequalities"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write seeded instance files");
  g->add_option("--example", gen.example, "1, 2 or 3")->required()
      ->check(CLI::Range(1, 3));
  g->add_option("--scenario", gen.scenario, "A, B or C")->required();
  g->add_option("--seed", gen.seed, "base seed")->required();
  g->add_option("--out", gen.out, "output directory")->required();
  g->add_option("--dims", gen.dims, "override (n,m) list, e.g. 5x2,10x5");
  g->add_option("--instances", gen.instances, "instances per (n,m)")
      ->check(CLI::PositiveNumber);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve one instance file");
  s->add_option("--instance", sol.instance, "instance JSON")->required();
  s->add_option("--solver", sol.solver,
                "CRM-VIP1, CRM-VIP2, BI1, BI2, EGM or Mal-Adap")->required();
  s->add_option("--eps", sol.eps, "stopping tolerance")->check(CLI::PositiveNumber);
  s->add_option("--max-iter", sol.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  s->add_option("--theta", sol.theta, "inner-loop constant of CRM-VIP2/BI2")
      ->check(CLI::PositiveNumber);
  s->add_option("--trace", sol.trace, "write iteration,residual CSV here");
  s->add_option("--out", sol.out, "write the result JSON here instead of stdout");
  s->add_flag("--no-check", sol.no_check, "skip the natural-residual check");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "Run a scenario and write CSV tables");
  b->add_option("--example", ben.example, "1, 2 or 3")->required()
      ->check(CLI::Range(1, 3));
  b->add_option("--scenario", ben.scenario, "A, B or C")->required();
  b->add_option("--seed", ben.seed, "base seed")->required();
  b->add_option("--out", ben.out, "output directory")->required();
  b->add_option("--threads", ben.threads, "worker threads")->check(CLI::PositiveNumber);
  b->add_option("--reps", ben.reps, "timing repetitions (minimum is kept)")
      ->check(CLI::PositiveNumber);
  b->add_option("--dims", ben.dims, "override (n,m) list, e.g. 5x2,10x5");
  b->add_option("--instances", ben.instances, "instances per (n,m)")
      ->check(CLI::PositiveNumber);
  b->add_option("--solvers", ben.solvers, "override solver list, comma separated");
  b->add_flag("--no-check", ben.no_check, "skip the natural-residual check");

  CheckArgs chk;
  auto* c = app.add_subcommand("check", "Natural residual and feasibility of a point");
  c->add_option("--instance", chk.instance, "instance JSON")->required();
  c->add_option("--point", chk.point, "point JSON (array, point or final_point)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*g) return run_generate(gen);
    if (*s) return run_solve(sol);
    if (*b) return run_bench(ben);
    if (*c) return run_check(chk);
  } catch (const ProjectionFailure& e) {
    std::cerr << "projection failure: " << e.what() << '\n';
    return kProjectionFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}
