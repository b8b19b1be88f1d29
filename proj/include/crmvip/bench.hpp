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

// Benchmark harness: seeded scenarios, the solver matrix, result rows,
// median and speedup tables, and Dolan-More performance profiles.
//
// Conventions
//   - median of an even count is the lower-middle element;
//   - medians and speedups use Converged rows only ("--" when none);
//   - profiles score every non-Converged run as +inf;
//   - profile costs are floored at 1 so zero-iteration runs stay finite.

#ifndef CRMVIP_BENCH_HPP
#define CRMVIP_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "crmvip/core.hpp"
#include "crmvip/operators.hpp"
#include "crmvip/random.hpp"
#include "crmvip/serialization.hpp"
#include "crmvip/sets.hpp"
#include "crmvip/solvers.hpp"

namespace crmvip {

enum class ScenarioName { A, B, C };

inline std::string_view to_string(ScenarioName s) {
  switch (s) {
    case ScenarioName::A: return "A";
    case ScenarioName::B: return "B";
    case ScenarioName::C: return "C";
  }
  return "?";
}

inline ScenarioName scenario_from_string(std::string_view s) {
  if (s == "A" || s == "a") return ScenarioName::A;
  if (s == "B" || s == "b") return ScenarioName::B;
  if (s == "C" || s == "c") return ScenarioName::C;
  throw InvalidArgumentError("unknown scenario '" + std::string(s) + "'");
}

using Dims = std::pair<int, int>;  // (n, m)

struct Scenario {
  ScenarioName name = ScenarioName::A;
  std::vector<Dims> dims;
  std::vector<Algorithm> solvers;
  int instances_per_config = 10;
  double tolerance = 1e-6;
  long max_iterations = 100'000;
};

namespace detail {

inline std::vector<Dims> grid(std::initializer_list<int> ns,
                              std::initializer_list<int> ms) {
  std::vector<Dims> out;
  for (int n : ns)
    for (int m : ms) out.emplace_back(n, m);
  return out;
}

inline const std::vector<Algorithm>& approximate_solvers() {
  static const std::vector<Algorithm> s = {Algorithm::Bi1, Algorithm::CrmVip1,
                                           Algorithm::Bi2, Algorithm::CrmVip2};
  return s;
}

}  // namespace detail

inline Scenario make_scenario(ScenarioName name) {
  switch (name) {
    case ScenarioName::A:
      return {name, detail::grid({5, 10}, {2, 5}),
              std::vector<Algorithm>(std::begin(kAllAlgorithms),
                                     std::end(kAllAlgorithms)),
              10, 1e-6, 100'000};
    case ScenarioName::B:
      return {name, detail::grid({50, 100}, {5, 8}), detail::approximate_solvers(),
              10, 1e-6, 300'000};
    case ScenarioName::C:
      return {name, detail::grid({100, 200, 500}, {20, 30, 50}),
              detail::approximate_solvers(), 5, 1e-5, 300'000};
  }
  throw InvalidArgumentError("unknown scenario");
}

/// Seed of instance i of configuration (n, m); the set, operator and start
/// point use independent streams derived from it.
inline std::uint64_t instance_seed(std::uint64_t base_seed, int example, int n,
                                   int m, int index) {
  return derive_seed({base_seed, static_cast<std::uint64_t>(example),
                      static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                      static_cast<std::uint64_t>(index)});
}

inline Instance generate_instance(ScenarioName scenario, int example, int n, int m,
                                  int index, std::uint64_t base_seed) {
  const std::uint64_t seed = instance_seed(base_seed, example, n, m, index);
  return Instance{example,
                  std::string(to_string(scenario)),
                  n,
                  m,
                  index,
                  seed,
                  generate_feasible_set(n, m, derive_seed({seed, 1})),
                  generate_operator(family_for_example(example), n,
                                    derive_seed({seed, 2})),
                  default_initial_point(n, derive_seed({seed, 3}))};
}

/// Overrides for desk-scale runs; unset fields take the scenario values.
struct RunOptions {
  int threads = 1;
  int repetitions = 3;
  bool check = true;
  std::optional<std::vector<Dims>> dims;
  std::optional<int> instances;
  std::optional<std::vector<Algorithm>> solvers;
};

inline std::vector<Instance> generate_instances(const Scenario& scenario,
                                                int example,
                                                std::uint64_t base_seed,
                                                const RunOptions& opts = {}) {
  family_for_example(example);  // validates
  const auto& dims = opts.dims ? *opts.dims : scenario.dims;
  const int count = opts.instances.value_or(scenario.instances_per_config);
  std::vector<Instance> out;
  for (const auto& [n, m] : dims)
    for (int i = 0; i < count; ++i)
      out.push_back(generate_instance(scenario.name, example, n, m, i, base_seed));
  return out;
}

struct ResultRow {
  std::string scenario;
  int example = 0;
  int n = 0;
  int m = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  Algorithm solver = Algorithm::CrmVip1;
  SolveStatus status = SolveStatus::MaxIterations;
  long iterations = 0;
  long inner_iterations = 0;
  std::int64_t wall_time_ns = 0;
  double natural_residual = std::numeric_limits<double>::quiet_NaN();
  double feasibility = std::numeric_limits<double>::quiet_NaN();
};

inline bool operator==(const ResultRow& a, const ResultRow& b) {
  auto key = [](const ResultRow& r) {
    return std::tie(r.scenario, r.example, r.n, r.m, r.instance, r.seed, r.solver,
                    r.status, r.iterations, r.inner_iterations, r.wall_time_ns);
  };
  auto same = [](double x, double y) {
    return x == y || (std::isnan(x) && std::isnan(y));
  };
  return key(a) == key(b) && same(a.natural_residual, b.natural_residual) &&
         same(a.feasibility, b.feasibility);
}

/// Solves one instance with one solver. Failures become status values;
/// the wall time is the minimum over opts.repetitions identical solves.
inline ResultRow run_cell(const Instance& inst, Algorithm solver,
                          const Scenario& scenario, const RunOptions& opts = {}) {
  SolverConfig cfg;
  cfg.algorithm = solver;
  cfg.tolerance = scenario.tolerance;
  cfg.max_iterations = scenario.max_iterations;
  cfg.seed = inst.seed;
  cfg.record_history = false;

  ResultRow row;
  row.scenario = inst.scenario;
  row.example = inst.example;
  row.n = inst.n;
  row.m = inst.m;
  row.instance = inst.index;
  row.seed = inst.seed;
  row.solver = solver;

  SolveResult first;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int rep = 0; rep < std::max(1, opts.repetitions); ++rep) {
    SolveResult r = solve(inst.op, inst.feasible_set, cfg, inst.initial_point);
    best = std::min<std::int64_t>(best, r.wall_time.count());
    if (rep == 0) first = std::move(r);
  }
  row.status = first.status;
  row.iterations = first.iterations;
  row.inner_iterations = first.inner_iterations_total;
  row.wall_time_ns = best;
  if (opts.check && first.final_point.size() == inst.n) {
    try {
      const SolutionCheck c =
          check_solution(first.final_point, inst.op, inst.feasible_set);
      row.natural_residual = c.natural_residual;
      row.feasibility = c.feasibility;
    } catch (const ProjectionFailure&) {
      // left as nan
    }
  }
  return row;
}

inline std::size_t solver_rank(Algorithm a) {
  for (std::size_t i = 0; i < std::size(kAllAlgorithms); ++i)
    if (kAllAlgorithms[i] == a) return i;
  return std::size(kAllAlgorithms);
}

/// Deterministic row order: scenario, example, n, m, instance, solver.
inline void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::make_tuple(a.scenario, a.example, a.n, a.m, a.instance,
                           solver_rank(a.solver)) <
           std::make_tuple(b.scenario, b.example, b.n, b.m, b.instance,
                           solver_rank(b.solver));
  });
}

/// Every (instance, solver) cell of the scenario. Cells may run on
/// opts.threads workers; the output order does not depend on it.
inline std::vector<ResultRow> run_scenario(const Scenario& scenario, int example,
                                           std::uint64_t base_seed,
                                           const RunOptions& opts = {}) {
  const std::vector<Instance> instances =
      generate_instances(scenario, example, base_seed, opts);
  const auto& solvers = opts.solvers ? *opts.solvers : scenario.solvers;
  const std::size_t cells = instances.size() * solvers.size();
  std::vector<ResultRow> rows(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      rows[c] = run_cell(instances[c / solvers.size()],
                         solvers[c % solvers.size()], scenario, opts);
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  sort_rows(rows);
  return rows;
}

// ---- CSV ------------------------------------------------------------------

inline constexpr std::string_view kRowsHeader =
    "scenario,example,n,m,instance,seed,solver,status,iterations,"
    "inner_iterations,wall_time_ns,natural_residual,feasibility";

inline void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kRowsHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.scenario << ',' << r.example << ',' << r.n << ',' << r.m << ','
        << r.instance << ',' << r.seed << ',' << to_string(r.solver) << ','
        << to_string(r.status) << ',' << r.iterations << ',' << r.inner_iterations
        << ',' << r.wall_time_ns << ',' << format_double(r.natural_residual) << ','
        << format_double(r.feasibility) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_integer(const std::string& s) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgumentError("not an integer: '" + s + "'");
  }
  return value;
}

}  // namespace detail

/// Inverse of write_rows_csv. Lines starting with '#' are skipped.
inline std::vector<ResultRow> read_rows_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kRowsHeader) throw InvalidArgumentError("unexpected rows header");
      header_seen = true;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 13) throw InvalidArgumentError("row needs 13 fields: " + line);
    ResultRow r;
    r.scenario = f[0];
    r.example = detail::parse_integer<int>(f[1]);
    r.n = detail::parse_integer<int>(f[2]);
    r.m = detail::parse_integer<int>(f[3]);
    r.instance = detail::parse_integer<int>(f[4]);
    r.seed = detail::parse_integer<std::uint64_t>(f[5]);
    r.solver = algorithm_from_string(f[6]);
    r.status = solve_status_from_string(f[7]);
    r.iterations = detail::parse_integer<long>(f[8]);
    r.inner_iterations = detail::parse_integer<long>(f[9]);
    r.wall_time_ns = detail::parse_integer<std::int64_t>(f[10]);
    r.natural_residual = parse_double(f[11]);
    r.feasibility = parse_double(f[12]);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw InvalidArgumentError("rows CSV has no header");
  return rows;
}

// ---- tables ---------------------------------------------------------------

/// Lower-middle median; empty input gives nullopt.
template <class T>
std::optional<T> lower_median(std::vector<T> values) {
  if (values.empty()) return std::nullopt;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

struct MedianCell {
  std::string scenario;
  int example = 0;
  int n = 0;
  int m = 0;
  Algorithm solver = Algorithm::CrmVip1;
  int runs = 0;
  int converged = 0;
  std::optional<long> iterations;
  std::optional<std::int64_t> wall_time_ns;
};

inline std::vector<MedianCell> median_table(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw InvalidArgumentError("median_table needs rows");
  using Key = std::tuple<std::string, int, int, int, std::size_t>;
  std::map<Key, std::pair<std::vector<long>, std::vector<std::int64_t>>> groups;
  std::map<Key, int> runs;
  for (const ResultRow& r : rows) {
    const Key key{r.scenario, r.example, r.n, r.m, solver_rank(r.solver)};
    ++runs[key];
    auto& g = groups[key];
    if (r.status == SolveStatus::Converged) {
      g.first.push_back(r.iterations);
      g.second.push_back(r.wall_time_ns);
    }
  }
  std::vector<MedianCell> out;
  for (const auto& [key, g] : groups) {
    MedianCell c;
    c.scenario = std::get<0>(key);
    c.example = std::get<1>(key);
    c.n = std::get<2>(key);
    c.m = std::get<3>(key);
    c.solver = kAllAlgorithms[std::get<4>(key)];
    c.runs = runs[key];
    c.converged = static_cast<int>(g.first.size());
    c.iterations = lower_median(g.first);
    c.wall_time_ns = lower_median(g.second);
    out.push_back(std::move(c));
  }
  return out;
}

inline constexpr std::string_view kMissing = "--";

inline void write_median_csv(std::ostream& out, const std::vector<MedianCell>& cells) {
  out << "# medians over Converged runs; even counts use the lower-middle "
         "element; " << kMissing << " marks cells with no converged run\n";
  out << "scenario,example,n,m,solver,runs,converged,median_iterations,"
         "median_wall_time_ns\n";
  for (const MedianCell& c : cells) {
    out << c.scenario << ',' << c.example << ',' << c.n << ',' << c.m << ','
        << to_string(c.solver) << ',' << c.runs << ',' << c.converged << ',';
    if (c.iterations) out << *c.iterations; else out << kMissing;
    out << ',';
    if (c.wall_time_ns) out << *c.wall_time_ns; else out << kMissing;
    out << '\n';
  }
}

struct SpeedupCell {
  std::string scenario;
  int example = 0;
  int n = 0;
  int m = 0;
  Algorithm solver = Algorithm::CrmVip1;
  std::optional<double> ratio;  // median_time(solver) / median_time(reference)
};

inline std::vector<SpeedupCell> speedup_table(const std::vector<ResultRow>& rows,
                                              Algorithm reference = Algorithm::CrmVip1) {
  const auto cells = median_table(rows);
  using Key = std::tuple<std::string, int, int, int>;
  std::map<Key, std::optional<std::int64_t>> ref;
  bool present = false;
  for (const MedianCell& c : cells) {
    if (c.solver == reference) {
      ref[{c.scenario, c.example, c.n, c.m}] = c.wall_time_ns;
      present = true;
    }
  }
  if (!present) {
    throw InvalidArgumentError("reference solver " + std::string(to_string(reference)) +
                               " is not in the rows");
  }
  std::vector<SpeedupCell> out;
  for (const MedianCell& c : cells) {
    SpeedupCell s{c.scenario, c.example, c.n, c.m, c.solver, std::nullopt};
    const auto it = ref.find({c.scenario, c.example, c.n, c.m});
    if (it != ref.end() && it->second && c.wall_time_ns) {
      s.ratio = static_cast<double>(*c.wall_time_ns) /
                static_cast<double>(std::max<std::int64_t>(*it->second, 1));
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_speedup_csv(std::ostream& out, const std::vector<SpeedupCell>& cells,
                              Algorithm reference = Algorithm::CrmVip1) {
  out << "# median wall time relative to " << to_string(reference) << "; "
      << kMissing << " marks a missing median\n";
  out << "scenario,example,n,m,solver,speedup\n";
  for (const SpeedupCell& s : cells) {
    out << s.scenario << ',' << s.example << ',' << s.n << ',' << s.m << ','
        << to_string(s.solver) << ',';
    if (s.ratio) out << format_double(*s.ratio); else out << kMissing;
    out << '\n';
  }
}

enum class ProfileMetric { Iterations, Time };

inline std::string_view to_string(ProfileMetric m) {
  return m == ProfileMetric::Iterations ? "iterations" : "time";
}

struct ProfileTable {
  ProfileMetric metric = ProfileMetric::Iterations;
  std::size_t problems = 0;
  // Per solver, the step function rho(tau) at every breakpoint tau >= 1.
  std::vector<std::pair<Algorithm, std::vector<std::pair<double, double>>>> points;

  /// rho_s(tau) for an arbitrary tau.
  double rho(Algorithm s, double tau) const {
    for (const auto& [solver, pts] : points) {
      if (solver != s) continue;
      double value = 0.0;
      for (const auto& [t, r] : pts)
        if (t <= tau) value = r;
      return value;
    }
    throw InvalidArgumentError("solver not in profile");
  }
};

/// Dolan-More profile over problems = (scenario, example, n, m, instance).
inline ProfileTable performance_profile(const std::vector<ResultRow>& rows,
                                        ProfileMetric metric) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  using Problem = std::tuple<std::string, int, int, int, int>;
  std::map<Problem, std::map<std::size_t, double>> costs;
  std::vector<std::size_t> solvers;
  for (const ResultRow& r : rows) {
    const std::size_t s = solver_rank(r.solver);
    if (std::find(solvers.begin(), solvers.end(), s) == solvers.end()) {
      solvers.push_back(s);
    }
    double cost = kInf;
    if (r.status == SolveStatus::Converged) {
      const double raw = metric == ProfileMetric::Iterations
                             ? static_cast<double>(r.iterations)
                             : static_cast<double>(r.wall_time_ns);
      cost = std::max(raw, 1.0);
    }
    costs[{r.scenario, r.example, r.n, r.m, r.instance}][s] = cost;
  }
  if (solvers.size() < 2) {
    throw InvalidArgumentError("performance_profile needs at least two solvers");
  }
  std::sort(solvers.begin(), solvers.end());

  // Ratios r_{p,s}; a solver absent on a problem counts as a failure.
  std::map<std::size_t, std::vector<double>> ratios;
  std::vector<double> taus = {1.0};
  for (const auto& [problem, by_solver] : costs) {
    double best = kInf;
    for (const auto& [s, c] : by_solver) best = std::min(best, c);
    for (std::size_t s : solvers) {
      const auto it = by_solver.find(s);
      const double c = it == by_solver.end() ? kInf : it->second;
      const double r = std::isinf(c) ? kInf : c / best;
      ratios[s].push_back(r);
      if (std::isfinite(r)) taus.push_back(r);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  ProfileTable table;
  table.metric = metric;
  table.problems = costs.size();
  for (std::size_t s : solvers) {
    std::vector<double> rs = ratios[s];
    std::sort(rs.begin(), rs.end());
    std::vector<std::pair<double, double>> pts;
    pts.reserve(taus.size());
    std::size_t hit = 0;
    for (double tau : taus) {
      while (hit < rs.size() && rs[hit] <= tau) ++hit;
      pts.emplace_back(tau, static_cast<double>(hit) /
                                static_cast<double>(table.problems));
    }
    table.points.emplace_back(kAllAlgorithms[s], std::move(pts));
  }
  return table;
}

inline void write_profile_csv(std::ostream& out, const ProfileTable& table) {
  out << "# performance profile (" << to_string(table.metric) << ") over "
      << table.problems << " problems; failed runs scored as +inf\n";
  out << "solver,tau,rho\n";
  for (const auto& [solver, pts] : table.points) {
    for (const auto& [tau, rho] : pts) {
      out << to_string(solver) << ',' << format_double(tau) << ','
          << format_double(rho) << '\n';
    }
  }
}

}  // namespace crmvip

#endif  // CRMVIP_BENCH_HPP
