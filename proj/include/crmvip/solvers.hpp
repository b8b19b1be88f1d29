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

// Iterative methods for VIP(F, C) with C an intersection of ellipsoids.
//
// Approximate-projection methods (only halfspace projections, iterates may
// be infeasible):
//   CRM-VIP1  x+ = T(x - (beta_k/eta_k) F(x)), T the circumcenter step over
//             the subgradient separators of every constraint.
//   BI1       same skeleton, T replaced by the projection onto the separator
//             of the most violated constraint.
//   CRM-VIP2  explicit circumcenter method: an inner loop of circumcenter
//             steps brings z^k within theta*beta_k of C (certified with the
//             Slater point), then z^{k+1} = T(y~ - (beta_k/eta_k) F(y~)),
//             and an ergodic average x^k of the y~ is maintained.
//   BI2       same skeleton as CRM-VIP2 with max-violation projections.
// Exact-projection comparators (Dykstra onto C):
//   EGM       extragradient with a constant step.
//   Mal-Adap  projected reflected gradient with adaptive steps.
//
// eta_k = max{1, |F|} and beta_k = 1 / k^p with k starting at 1.

#ifndef CRMVIP_SOLVERS_HPP
#define CRMVIP_SOLVERS_HPP

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crmvip/core.hpp"
#include "crmvip/geometry.hpp"
#include "crmvip/operators.hpp"
#include "crmvip/random.hpp"
#include "crmvip/sets.hpp"

namespace crmvip {

enum class Algorithm { CrmVip1, CrmVip2, Bi1, Bi2, Egm, MalAdap };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::Egm, Algorithm::MalAdap, Algorithm::Bi1,
    Algorithm::CrmVip1, Algorithm::Bi2, Algorithm::CrmVip2};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::CrmVip1: return "CRM-VIP1";
    case Algorithm::CrmVip2: return "CRM-VIP2";
    case Algorithm::Bi1: return "BI1";
    case Algorithm::Bi2: return "BI2";
    case Algorithm::Egm: return "EGM";
    case Algorithm::MalAdap: return "Mal-Adap";
  }
  return "?";
}

/// Case-insensitive; accepts the display names above.
inline Algorithm algorithm_from_string(std::string_view s) {
  auto lower = [](std::string_view v) {
    std::string out(v);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  const std::string key = lower(s);
  for (Algorithm a : kAllAlgorithms) {
    if (lower(to_string(a)) == key) return a;
  }
  throw InvalidArgumentError("unknown solver '" + std::string(s) + "'");
}

inline bool uses_exact_projection(Algorithm a) {
  return a == Algorithm::Egm || a == Algorithm::MalAdap;
}

enum class SolveStatus { Converged, MaxIterations, Stalled, ProjectionFailure };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::Stalled: return "Stalled";
    case SolveStatus::ProjectionFailure: return "ProjectionFailure";
  }
  return "?";
}

inline SolveStatus solve_status_from_string(std::string_view s) {
  for (SolveStatus st : {SolveStatus::Converged, SolveStatus::MaxIterations,
                         SolveStatus::Stalled, SolveStatus::ProjectionFailure}) {
    if (to_string(st) == s) return st;
  }
  throw InvalidArgumentError("unknown solve status '" + std::string(s) + "'");
}

/// beta_k = 1 / k^exponent for k >= 1. Exponents in (0.5, 1] give a
/// divergent sum with a convergent sum of squares.
struct StepsizeSchedule {
  double exponent = 0.9;

  double operator()(long k) const {
    return std::pow(static_cast<double>(k), -exponent);
  }

  void validate() const {
    if (!(exponent > 0.5 && exponent <= 1.0)) {
      throw InvalidArgumentError("stepsize exponent must lie in (0.5, 1]");
    }
  }
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::CrmVip1;
  double tolerance = 1e-6;
  long max_iterations = 100'000;
  double theta = 1.0;
  StepsizeSchedule schedule;
  std::optional<double> egm_beta;     // default 0.5 / L
  std::optional<double> mal_lambda0;  // default 0.5 / L
  std::uint64_t seed = 0;             // default initial point
  long inner_cap = 10'000;
  double projection_tol = 1e-10;
  int projection_max_sweeps = 10'000;
  bool record_history = true;

  void validate() const {
    if (!(tolerance > 0.0)) throw InvalidArgumentError("tolerance must be > 0");
    if (max_iterations < 1) throw InvalidArgumentError("max_iterations must be >= 1");
    if (!(theta > 0.0)) throw InvalidArgumentError("theta must be > 0");
    if (egm_beta && !(*egm_beta > 0.0)) throw InvalidArgumentError("egm_beta must be > 0");
    if (mal_lambda0 && !(*mal_lambda0 > 0.0)) {
      throw InvalidArgumentError("mal_lambda0 must be > 0");
    }
    if (inner_cap < 1) throw InvalidArgumentError("inner_cap must be >= 1");
    schedule.validate();
  }
};

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterations;
  Vector final_point;
  std::optional<Vector> ergodic_point;
  long iterations = 0;
  long inner_iterations_total = 0;
  long operator_evals = 0;
  std::chrono::nanoseconds wall_time{0};
  std::vector<std::pair<long, double>> residual_history;
  // Filled by check_solution after the timed solve, not by the solvers.
  std::optional<double> natural_residual;
  std::optional<double> feasibility;
  std::string message;
};

/// Per-iteration snapshot passed to an observer. Meaning of the vectors:
///   CRM-VIP1/BI1: point = x^k, next = x^{k+1}.
///   CRM-VIP2/BI2: z = z^k, point = y~^k, next = z^{k+1},
///                 ergodic = x^{k+1}.
///   EGM:          point = x^k, next = y^k.
///   Mal-Adap:     point = x^k, next = y^k, step = lambda_k.
struct IterationEvent {
  Algorithm algorithm;
  long k = 0;
  double step = 0.0;
  double eta = 1.0;
  const Vector& point;
  const Vector& next;
  const Vector* z = nullptr;
  const Vector* ergodic = nullptr;
  long inner_iterations = 0;
  double residual = 0.0;
};

using IterationObserver = std::function<void(const IterationEvent&)>;

/// Seeded uniform point in [-2, 2]^n.
inline Vector default_initial_point(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return uniform_vector(rng, n, -2.0, 2.0);
}

enum class ApproxProjection { Circumcenter, MaxViolation };

/// One approximate projection of y using separators built at y.
/// Circumcenter steps that stall (cancelling displacements) fall back to the
/// max-violation halfspace projection.
inline Vector approximate_projection(const FeasibleSet& fs, const Vector& y,
                                     ApproxProjection kind) {
  if (kind == ApproxProjection::Circumcenter) {
    const std::vector<Separator> seps = separators_at(fs, y);
    CircumcenterStep step = circumcenter_step(y, seps);
    if (!step.stalled) return std::move(step.output);
  }
  const Separator s = max_violation_separator(fs, y);
  if (const auto* h = std::get_if<Halfspace>(&s)) return project_halfspace(y, *h);
  return y;
}

namespace detail {

inline double relative_change(const Vector& next, const Vector& prev) {
  return (next - prev).norm() / std::max(prev.norm(), 1.0);
}

inline ApproxProjection projection_kind(Algorithm a) {
  return (a == Algorithm::CrmVip1 || a == Algorithm::CrmVip2)
             ? ApproxProjection::Circumcenter
             : ApproxProjection::MaxViolation;
}

inline Vector operator_step(const Vector& x, const Vector& fx, double beta,
                            double* eta_out = nullptr) {
  const double eta = std::max(1.0, fx.norm());
  if (eta_out) *eta_out = eta;
  return x - (beta / eta) * fx;
}

inline void check_problem(const Vector& x0, const OperatorSpec& op,
                          const FeasibleSet& fs) {
  require_dim("operator dimension", fs.dim(), op.dim());
  require_dim("initial point", fs.dim(), x0.size());
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline Vector crm_vip1_step(const Vector& x, long k, const OperatorSpec& op,
                            const FeasibleSet& fs,
                            const StepsizeSchedule& schedule) {
  if (k < 1) throw InvalidArgumentError("iteration index must be >= 1");
  const Vector y = detail::operator_step(x, eval_operator(op, x), schedule(k));
  return approximate_projection(fs, y, ApproxProjection::Circumcenter);
}

inline Vector bi1_step(const Vector& x, long k, const OperatorSpec& op,
                       const FeasibleSet& fs, const StepsizeSchedule& schedule) {
  if (k < 1) throw InvalidArgumentError("iteration index must be >= 1");
  const Vector y = detail::operator_step(x, eval_operator(op, x), schedule(k));
  return approximate_projection(fs, y, ApproxProjection::MaxViolation);
}

/// Shared loop of CRM-VIP1 and BI1. Stops on
/// |x^{k+1} - x^k| / max{|x^k|, 1} <= eps or F(x^k) = 0.
inline SolveResult crm_vip1_solve(const Vector& x0, const OperatorSpec& op,
                                  const FeasibleSet& fs, const SolverConfig& cfg,
                                  const IterationObserver& observer = {}) {
  cfg.validate();
  if (cfg.algorithm != Algorithm::CrmVip1 && cfg.algorithm != Algorithm::Bi1) {
    throw InvalidArgumentError("crm_vip1_solve runs CRM-VIP1 or BI1 only");
  }
  detail::check_problem(x0, op, fs);
  const ApproxProjection kind = detail::projection_kind(cfg.algorithm);
  const detail::Stopwatch clock;

  SolveResult result;
  Vector x = x0;
  for (long k = 1;; ++k) {
    const Vector fx = eval_operator(op, x);
    ++result.operator_evals;
    if (fx.isZero(0.0)) {
      result.status = SolveStatus::Converged;
      result.iterations = k - 1;
      break;
    }
    const double beta = cfg.schedule(k);
    double eta = 1.0;
    const Vector y = detail::operator_step(x, fx, beta, &eta);
    Vector next = approximate_projection(fs, y, kind);
    const double residual = detail::relative_change(next, x);
    if (cfg.record_history) result.residual_history.emplace_back(k, residual);
    if (observer) {
      observer(
          {cfg.algorithm, k, beta, eta, x, next, nullptr, nullptr, 0, residual});
    }
    x = std::move(next);
    result.iterations = k;
    if (residual <= cfg.tolerance) {
      result.status = SolveStatus::Converged;
      break;
    }
    if (k >= cfg.max_iterations) {
      result.status = SolveStatus::MaxIterations;
      break;
    }
  }
  result.final_point = std::move(x);
  result.wall_time = clock.elapsed();
  return result;
}

struct InnerLoopResult {
  Vector y;
  long iterations = 0;
  bool stalled = false;
};

/// Left side of the inner-loop test: an upper bound on dist(y, C) obtained
/// from the Slater point w, g(y) |y - w| / (g(y) - g(w)). Nonpositive when
/// y is feasible.
inline double slater_distance_bound(const FeasibleSet& fs, const Vector& y) {
  const double gy = max_violation(fs, y).value;
  if (gy <= 0.0) return gy;
  const double gw = -fs.slater_margin();
  return gy * (y - fs.slater_point()).norm() / (gy - gw);
}

/// Approximate projections from z until the Slater bound certifies
/// dist(y, C) <= theta * beta_k.
inline InnerLoopResult ecm_inner_loop(
    const Vector& z, const FeasibleSet& fs, double theta, double beta_k,
    long inner_cap, ApproxProjection kind = ApproxProjection::Circumcenter) {
  if (!(theta > 0.0)) throw InvalidArgumentError("theta must be > 0");
  detail::require_dim("inner loop point", fs.dim(), z.size());
  InnerLoopResult out{z, 0, false};
  const double target = theta * beta_k;
  while (slater_distance_bound(fs, out.y) > target) {
    if (out.iterations >= inner_cap) {
      out.stalled = true;
      break;
    }
    out.y = approximate_projection(fs, out.y, kind);
    ++out.iterations;
  }
  return out;
}

/// Shared loop of CRM-VIP2 and BI2. Stops when |z^{k+1} - y~^k| <= eps or
/// the ergodic sequence has relative change <= eps.
inline SolveResult ecm_solve(const Vector& z0, const OperatorSpec& op,
                             const FeasibleSet& fs, const SolverConfig& cfg,
                             const IterationObserver& observer = {}) {
  cfg.validate();
  if (cfg.algorithm != Algorithm::CrmVip2 && cfg.algorithm != Algorithm::Bi2) {
    throw InvalidArgumentError("ecm_solve runs CRM-VIP2 or BI2 only");
  }
  detail::check_problem(z0, op, fs);
  const ApproxProjection kind = detail::projection_kind(cfg.algorithm);
  const detail::Stopwatch clock;

  SolveResult result;
  Vector z = z0;
  Vector ergodic = Vector::Zero(z0.size());
  Vector y_tilde = z0;
  double sigma = 0.0;
  for (long k = 1;; ++k) {
    const double beta = cfg.schedule(k);
    InnerLoopResult inner =
        ecm_inner_loop(z, fs, cfg.theta, beta, cfg.inner_cap, kind);
    result.inner_iterations_total += inner.iterations;
    y_tilde = std::move(inner.y);
    result.iterations = k;
    if (inner.stalled) {
      result.status = SolveStatus::Stalled;
      result.message = "inner loop hit its cap";
      break;
    }

    const Vector fy = eval_operator(op, y_tilde);
    ++result.operator_evals;
    double eta = 1.0;
    const Vector shifted = detail::operator_step(y_tilde, fy, beta, &eta);
    Vector z_next = approximate_projection(fs, shifted, kind);

    const double weight = beta / eta;
    sigma += weight;
    const double mix = weight / sigma;
    Vector ergodic_next = (1.0 - mix) * ergodic + mix * y_tilde;

    const double z_gap = (z_next - y_tilde).norm();
    const double ergodic_change = detail::relative_change(ergodic_next, ergodic);
    if (cfg.record_history) result.residual_history.emplace_back(k, z_gap);
    if (observer) {
      observer({cfg.algorithm, k, beta, eta, y_tilde, z_next, &z,
                &ergodic_next, inner.iterations, z_gap});
    }
    ergodic = std::move(ergodic_next);
    z = std::move(z_next);
    if (z_gap <= cfg.tolerance || ergodic_change <= cfg.tolerance) {
      result.status = SolveStatus::Converged;
      break;
    }
    if (k >= cfg.max_iterations) {
      result.status = SolveStatus::MaxIterations;
      break;
    }
  }
  result.final_point = std::move(y_tilde);
  result.ergodic_point = std::move(ergodic);
  result.wall_time = clock.elapsed();
  return result;
}

/// Extragradient: y = P_C(x - beta F(x)), x+ = P_C(x - beta F(y)); stops on
/// |x - y| <= eps. The start point is projected onto C first.
inline SolveResult egm_solve(const Vector& x0, const OperatorSpec& op,
                             const FeasibleSet& fs, const SolverConfig& cfg,
                             const IterationObserver& observer = {}) {
  cfg.validate();
  detail::check_problem(x0, op, fs);
  const detail::Stopwatch clock;
  const double beta = cfg.egm_beta.value_or(0.5 / lipschitz_estimate(op, fs));
  auto project = [&](const Vector& v) {
    return project_intersection(fs, v, cfg.projection_tol,
                                cfg.projection_max_sweeps);
  };

  SolveResult result;
  Vector x = x0;
  try {
    x = project(x0);
    for (long k = 1;; ++k) {
      const Vector fx = eval_operator(op, x);
      ++result.operator_evals;
      Vector y = project(x - beta * fx);
      const double residual = (x - y).norm();
      if (cfg.record_history) result.residual_history.emplace_back(k, residual);
      if (observer) {
        observer({Algorithm::Egm, k, beta, 1.0, x, y, nullptr, nullptr, 0, residual});
      }
      result.iterations = k;
      if (residual <= cfg.tolerance) {
        result.status = SolveStatus::Converged;
        x = std::move(y);
        break;
      }
      const Vector fy = eval_operator(op, y);
      ++result.operator_evals;
      x = project(x - beta * fy);
      if (k >= cfg.max_iterations) {
        result.status = SolveStatus::MaxIterations;
        break;
      }
    }
  } catch (const ProjectionFailure& e) {
    result.status = SolveStatus::ProjectionFailure;
    result.message = e.what();
  }
  result.final_point = std::move(x);
  result.wall_time = clock.elapsed();
  return result;
}

/// Projected reflected gradient with adaptive steps:
///   y^k = 2 x^k - x^{k-1},
///   lambda_k = min{ sqrt(1 + t_{k-1}) lambda_{k-1},
///                   a |y^k - y^{k-1}| / |F(y^k) - F(y^{k-1})| },
///   t_k = lambda_k / lambda_{k-1},  a = 0.41 < sqrt(2) - 1,
///   x^{k+1} = P_C(x^k - lambda_k F(y^k)).
/// Stops on r = |y^k - P_C(y^k - lambda_k F(y^k))| + |x^k - y^k| <= eps.
inline SolveResult mal_adap_solve(const Vector& x0, const OperatorSpec& op,
                                  const FeasibleSet& fs, const SolverConfig& cfg,
                                  const IterationObserver& observer = {}) {
  cfg.validate();
  detail::check_problem(x0, op, fs);
  const detail::Stopwatch clock;
  constexpr double kReflectionFactor = 0.41;
  constexpr double kMinStep = 1e-14;
  auto project = [&](const Vector& v) {
    return project_intersection(fs, v, cfg.projection_tol,
                                cfg.projection_max_sweeps);
  };

  SolveResult result;
  Vector x = x0;
  try {
    double lambda = cfg.mal_lambda0.value_or(0.5 / lipschitz_estimate(op, fs));
    double ratio = 1.0;
    x = project(x0);
    Vector y_prev = x;
    Vector f_prev = eval_operator(op, y_prev);
    ++result.operator_evals;
    Vector x_prev = x;
    x = project(x - lambda * f_prev);
    Vector y = 2.0 * x - x_prev;
    for (long k = 1;; ++k) {
      const Vector fy = eval_operator(op, y);
      ++result.operator_evals;
      const double df = (fy - f_prev).norm();
      double next_lambda = std::sqrt(1.0 + ratio) * lambda;
      if (df > 0.0) {
        next_lambda = std::min(next_lambda,
                               kReflectionFactor * (y - y_prev).norm() / df);
      }
      ratio = next_lambda / lambda;
      lambda = next_lambda;
      result.iterations = k;
      if (!(lambda >= kMinStep)) {
        result.status = SolveStatus::Stalled;
        result.message = "adaptive step collapsed";
        break;
      }
      const double residual =
          (y - project(y - lambda * fy)).norm() + (x - y).norm();
      if (cfg.record_history) result.residual_history.emplace_back(k, residual);
      if (observer) {
        observer(
            {Algorithm::MalAdap, k, lambda, 1.0, x, y, nullptr, nullptr, 0, residual});
      }
      if (residual <= cfg.tolerance) {
        result.status = SolveStatus::Converged;
        break;
      }
      if (k >= cfg.max_iterations) {
        result.status = SolveStatus::MaxIterations;
        break;
      }
      x_prev = x;
      x = project(x - lambda * fy);
      y_prev = std::move(y);
      f_prev = fy;
      y = 2.0 * x - x_prev;
    }
  } catch (const ProjectionFailure& e) {
    result.status = SolveStatus::ProjectionFailure;
    result.message = e.what();
  }
  result.final_point = std::move(x);
  result.wall_time = clock.elapsed();
  return result;
}

/// Dispatch on cfg.algorithm. Without x0 the start is
/// default_initial_point(n, cfg.seed).
inline SolveResult solve(const OperatorSpec& op, const FeasibleSet& fs,
                         const SolverConfig& cfg,
                         const std::optional<Vector>& x0 = std::nullopt,
                         const IterationObserver& observer = {}) {
  const Vector start = x0 ? *x0 : default_initial_point(fs.dim(), cfg.seed);
  switch (cfg.algorithm) {
    case Algorithm::CrmVip1:
    case Algorithm::Bi1:
      return crm_vip1_solve(start, op, fs, cfg, observer);
    case Algorithm::CrmVip2:
    case Algorithm::Bi2:
      return ecm_solve(start, op, fs, cfg, observer);
    case Algorithm::Egm:
      return egm_solve(start, op, fs, cfg, observer);
    case Algorithm::MalAdap:
      return mal_adap_solve(start, op, fs, cfg, observer);
  }
  throw InvalidArgumentError("unknown algorithm");
}

struct SolutionCheck {
  double natural_residual = 0.0;
  double feasibility = 0.0;
};

/// Natural-map residual |x - P_C(x - F(x))| and max{0, max_i g_i(x)}.
/// Throws ProjectionFailure if the exact projection fails.
inline SolutionCheck check_solution(const Vector& x, const OperatorSpec& op,
                                    const FeasibleSet& fs, double tol = 1e-10,
                                    int max_sweeps = 10'000) {
  if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be > 0");
  detail::check_problem(x, op, fs);
  SolutionCheck out;
  out.feasibility = std::max(0.0, max_violation(fs, x).value);
  const Vector fx = eval_operator(op, x);
  out.natural_residual =
      (x - project_intersection(fs, x - fx, tol, max_sweeps)).norm();
  return out;
}

}  // namespace crmvip

#endif  // CRMVIP_SOLVERS_HPP
