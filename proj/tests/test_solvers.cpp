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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crmvip/operators.hpp"
#include "crmvip/random.hpp"
#include "crmvip/sets.hpp"
#include "crmvip/solvers.hpp"

namespace crmvip {
namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Ellipsoid ball(const Vector& center, double radius) {
  const auto n = center.size();
  return Ellipsoid(Matrix::Identity(n, n), -center,
                   radius * radius - center.squaredNorm());
}

FeasibleSet unit_ball(Eigen::Index n) {
  return FeasibleSet({ball(Vector::Zero(n), 1.0)}, Vector::Zero(n));
}

// Two balls whose separators at (2,2) are x1 <= 1.905 and x2 <= 1.905.
FeasibleSet two_balls() {
  return FeasibleSet({ball(vec({1, 2}), 0.9), ball(vec({2, 1}), 0.9)},
                     vec({1.5, 1.5}));
}

OperatorSpec zero_operator(Eigen::Index n) {
  return {OperatorFamily::Gradient, Matrix::Zero(n, n), Vector::Zero(n),
          Vector::Zero(n), {static_cast<int>(n), 0}};
}

SolverConfig config(Algorithm a) {
  SolverConfig cfg;
  cfg.algorithm = a;
  return cfg;
}

double dist_to_set(const FeasibleSet& fs, const Vector& y) {
  return (y - project_intersection(fs, y, 1e-13)).norm();
}

// --- steps

TEST(CrmVip1Step, FeasibleShiftIsReturned) {
  const FeasibleSet fs = unit_ball(2);
  const OperatorSpec op = make_shifted_identity(vec({0.2, 0.1}));
  const Vector x = vec({0.3, -0.2});
  // k = 1: beta = 1, |F| < 1, so y = x - F(x), the target up to rounding.
  const Vector y = x - eval_operator(op, x);
  ASSERT_LE((y - vec({0.2, 0.1})).norm(), 1e-15);
  EXPECT_EQ(crm_vip1_step(x, 1, op, fs, {}), y);
  EXPECT_EQ(bi1_step(x, 1, op, fs, {}), y);
}

TEST(CrmVip1Step, ZeroOperatorIsFeasibilityStep) {
  const FeasibleSet fs = two_balls();
  const Vector x = vec({2, 2});
  const Vector expected = circumcenter_step(x, separators_at(fs, x)).output;
  const Vector out = crm_vip1_step(x, 4, zero_operator(2), fs, {});
  EXPECT_EQ(out, expected);
  EXPECT_NEAR(out(0), 1.905, 1e-14);
  EXPECT_NEAR(out(1), 1.905, 1e-14);
}

TEST(CrmVip1Step, UnitBallHandComputed) {
  const FeasibleSet fs = unit_ball(2);
  const OperatorSpec op = make_shifted_identity(Vector::Zero(2));
  const Vector out = crm_vip1_step(vec({3, 0}), 1, op, fs, {});
  EXPECT_NEAR(out(0), 1.25, 1e-15);
  EXPECT_EQ(out(1), 0.0);
  EXPECT_EQ(bi1_step(vec({3, 0}), 1, op, fs, {}), out);
}

TEST(Bi1Step, MovesOntoOneFacetOnly) {
  const FeasibleSet fs = two_balls();
  const Vector bi = bi1_step(vec({2, 2}), 1, zero_operator(2), fs, {});
  EXPECT_NEAR(bi(0), 1.905, 1e-14);  // tie broken toward the first constraint
  EXPECT_EQ(bi(1), 2.0);
}

TEST(CrmVip1Step, RejectsIterationZero) {
  EXPECT_THROW(crm_vip1_step(vec({0, 0}), 0, zero_operator(2), unit_ball(2), {}),
               InvalidArgumentError);
  EXPECT_THROW(bi1_step(vec({0, 0}), 0, zero_operator(2), unit_ball(2), {}),
               InvalidArgumentError);
}

// --- CRM-VIP1 / BI1 loop

TEST(CrmVip1Solve, StartAtZeroOfOperator) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 3);
  const OperatorSpec op = make_shifted_identity(fs.slater_point());
  for (Algorithm a : {Algorithm::CrmVip1, Algorithm::Bi1}) {
    const SolveResult r = solve(op, fs, config(a), fs.slater_point());
    EXPECT_EQ(r.status, SolveStatus::Converged);
    EXPECT_EQ(r.iterations, 0);
    EXPECT_EQ(r.final_point, fs.slater_point());
  }
}

TEST(CrmVip1Solve, GeneratedInstanceIsNearlySolved) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 11);
  const OperatorSpec op = generate_operator(OperatorFamily::Gradient, 5, 12);
  const SolveResult r = solve(op, fs, config(Algorithm::CrmVip1));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  const SolutionCheck c = check_solution(r.final_point, op, fs);
  EXPECT_LE(c.natural_residual, 1e-2);
  EXPECT_LE(c.feasibility, 1e-2);
}

TEST(CrmVip1Solve, StopsOnRelativeChange) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 5);
  const OperatorSpec op = generate_operator(OperatorFamily::ParamonotoneNonGradient, 5, 6);
  SolverConfig cfg = config(Algorithm::CrmVip1);
  cfg.tolerance = 1e-4;
  const SolveResult r = solve(op, fs, cfg);
  ASSERT_EQ(r.status, SolveStatus::Converged);
  ASSERT_FALSE(r.residual_history.empty());
  EXPECT_LE(r.residual_history.back().second, 1e-4);
  for (std::size_t i = 0; i + 1 < r.residual_history.size(); ++i) {
    EXPECT_GT(r.residual_history[i].second, 1e-4);
    EXPECT_EQ(r.residual_history[i].first, static_cast<long>(i) + 1);
  }
}

TEST(CrmVip1Solve, QuasiFejerTowardInteriorSolution) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeasibleSet fs = generate_feasible_set(6, 3, seed);
    const Vector target = fs.slater_point();
    const OperatorSpec op = make_shifted_identity(target);
    for (Algorithm a : {Algorithm::CrmVip1, Algorithm::Bi1}) {
      SolverConfig cfg = config(a);
      cfg.seed = seed;
      long checked = 0;
      solve(op, fs, cfg, std::nullopt, [&](const IterationEvent& ev) {
        const double before = (ev.point - target).squaredNorm();
        const double after = (ev.next - target).squaredNorm();
        EXPECT_LE(after, before + ev.step * ev.step + 1e-12) << "k=" << ev.k;
        ++checked;
      });
      EXPECT_GT(checked, 0);
    }
  }
}

TEST(CrmVip1Solve, IterationCapIsRespected) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 1);
  const OperatorSpec op = generate_operator(OperatorFamily::Gradient, 5, 2);
  SolverConfig cfg = config(Algorithm::CrmVip1);
  cfg.max_iterations = 7;
  cfg.tolerance = 1e-300;
  const SolveResult r = solve(op, fs, cfg);
  EXPECT_EQ(r.status, SolveStatus::MaxIterations);
  EXPECT_EQ(r.iterations, 7);
  EXPECT_EQ(r.residual_history.size(), 7u);
}

// --- inner loop

TEST(EcmInnerLoop, FeasibleStartReturnsAtOnce) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 4);
  const Vector z = 0.01 * Vector::Ones(5);
  const InnerLoopResult r = ecm_inner_loop(z, fs, 1.0, 1e-9, 10);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.y, z);
  EXPECT_FALSE(r.stalled);
}

TEST(EcmInnerLoop, SlaterBoundFormula) {
  // g(y) = 0.375 |y|^2 - 1, w = 0: g(w) = -1, and |y| = 2 gives g(y) = 0.5.
  const FeasibleSet fs({Ellipsoid(0.375 * Matrix::Identity(2, 2), Vector::Zero(2), 1.0)},
                       Vector::Zero(2));
  const Vector y = vec({2, 0});
  EXPECT_DOUBLE_EQ(slater_distance_bound(fs, y), 2.0 / 3.0);
  const InnerLoopResult stop = ecm_inner_loop(y, fs, 1.0, 1.0, 10);
  EXPECT_EQ(stop.iterations, 0);
  EXPECT_EQ(stop.y, y);
  // The bound really dominates the distance here.
  EXPECT_LE(dist_to_set(fs, y), 2.0 / 3.0);
  const InnerLoopResult more = ecm_inner_loop(y, fs, 1.0, 0.5, 10);
  EXPECT_GE(more.iterations, 1);
  EXPECT_LE(slater_distance_bound(fs, more.y), 0.5);
}

TEST(EcmInnerLoop, CertifiedDistanceBound) {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FeasibleSet fs = generate_feasible_set(5, 2, seed);
    for (double beta : {0.5, 0.1, 0.01}) {
      const Vector z = uniform_vector(rng, 5, -3.0, 3.0);
      for (ApproxProjection kind :
           {ApproxProjection::Circumcenter, ApproxProjection::MaxViolation}) {
        const InnerLoopResult r = ecm_inner_loop(z, fs, 1.0, beta, 100'000, kind);
        ASSERT_FALSE(r.stalled);
        EXPECT_LE(dist_to_set(fs, r.y), beta + 1e-9);
      }
    }
  }
}

TEST(EcmInnerLoop, CapGivesStall) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 2);
  const InnerLoopResult r = ecm_inner_loop(5.0 * Vector::Ones(5), fs, 1.0, 1e-12, 1);
  EXPECT_TRUE(r.stalled);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_THROW(ecm_inner_loop(Vector::Zero(5), fs, 0.0, 1.0, 1), InvalidArgumentError);
}

// --- CRM-VIP2 / BI2 loop

TEST(EcmSolve, FirstErgodicPointIsYTilde) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 8);
  const OperatorSpec op = generate_operator(OperatorFamily::MonotoneNonParamonotone, 5, 9);
  for (Algorithm a : {Algorithm::CrmVip2, Algorithm::Bi2}) {
    bool seen = false;
    solve(op, fs, config(a), std::nullopt, [&](const IterationEvent& ev) {
      if (ev.k != 1) return;
      ASSERT_NE(ev.ergodic, nullptr);
      EXPECT_EQ(*ev.ergodic, ev.point);
      seen = true;
    });
    EXPECT_TRUE(seen);
  }
}

TEST(EcmSolve, ErgodicIdentity) {
  const FeasibleSet fs = generate_feasible_set(5, 3, 10);
  const OperatorSpec op = generate_operator(OperatorFamily::MonotoneNonParamonotone, 5, 11);
  SolverConfig cfg = config(Algorithm::CrmVip2);
  cfg.max_iterations = 300;
  Vector weighted = Vector::Zero(5);
  double sigma = 0.0;
  const SolveResult r = solve(op, fs, cfg, std::nullopt, [&](const IterationEvent& ev) {
    const double w = ev.step / ev.eta;
    weighted += w * ev.point;
    sigma += w;
    const Vector direct = weighted / sigma;
    EXPECT_LE((direct - *ev.ergodic).norm(), 1e-12 * std::max(1.0, direct.norm()))
        << "k=" << ev.k;
  });
  ASSERT_TRUE(r.ergodic_point.has_value());
  EXPECT_LE((weighted / sigma - *r.ergodic_point).norm(), 1e-12);
}

TEST(EcmSolve, QuasiFejerTowardInteriorSolution) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeasibleSet fs = generate_feasible_set(6, 3, seed + 40);
    const Vector target = 0.1 * fs.slater_point();
    const OperatorSpec op = make_shifted_identity(target);
    for (Algorithm a : {Algorithm::CrmVip2, Algorithm::Bi2}) {
      SolverConfig cfg = config(a);
      cfg.seed = seed;
      long checked = 0;
      solve(op, fs, cfg, std::nullopt, [&](const IterationEvent& ev) {
        const double z_k = (*ev.z - target).squaredNorm();
        // inner loop first, then the operator step on y~
        EXPECT_LE((ev.point - target).squaredNorm(), z_k + 1e-12);
        EXPECT_LE((ev.next - target).squaredNorm(), z_k + ev.step * ev.step + 1e-12)
            << "k=" << ev.k;
        ++checked;
      });
      EXPECT_GT(checked, 0);
    }
  }
}

TEST(EcmSolve, InnerCertificateAlongRun) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 21);
  const OperatorSpec op = generate_operator(OperatorFamily::ParamonotoneNonGradient, 5, 22);
  SolverConfig cfg = config(Algorithm::CrmVip2);
  cfg.max_iterations = 200;
  solve(op, fs, cfg, std::nullopt, [&](const IterationEvent& ev) {
    EXPECT_LE(dist_to_set(fs, ev.point), cfg.theta * ev.step + 1e-9) << "k=" << ev.k;
  });
}

TEST(EcmSolve, ZeroOperatorConvergesAtOnce) {
  const FeasibleSet fs = generate_feasible_set(4, 2, 30);
  const SolveResult r = solve(zero_operator(4), fs, config(Algorithm::CrmVip2),
                              Vector::Zero(4));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.final_point, Vector::Zero(4));
}

// --- EGM

TEST(EgmSolve, ZeroOperatorConvergesAtOnce) {
  const FeasibleSet fs = unit_ball(2);
  const SolveResult r = solve(zero_operator(2), fs, config(Algorithm::Egm), vec({2, 0}));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR((r.final_point - vec({1, 0})).norm(), 0.0, 1e-9);
}

TEST(EgmSolve, UnitBallHandComputed) {
  const FeasibleSet fs = unit_ball(2);
  const OperatorSpec op = make_shifted_identity(Vector::Zero(2));
  SolverConfig cfg = config(Algorithm::Egm);
  cfg.egm_beta = 0.5;
  cfg.max_iterations = 2;
  std::vector<Vector> xs, ys;
  solve(op, fs, cfg, vec({2, 0}), [&](const IterationEvent& ev) {
    xs.push_back(ev.point);
    ys.push_back(ev.next);
  });
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_NEAR((xs[0] - vec({1, 0})).norm(), 0.0, 1e-9);
  EXPECT_NEAR((ys[0] - vec({0.5, 0})).norm(), 0.0, 1e-9);
  EXPECT_NEAR((xs[1] - vec({0.75, 0})).norm(), 0.0, 1e-9);
}

TEST(EgmSolve, NaturalResidualAtConvergence) {
  // Unit Lipschitz constant, so beta = 0.5 and the natural residual is at
  // most |x - y| / beta.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeasibleSet fs = generate_feasible_set(5, 2, seed);
    Rng rng(seed + 100);
    const OperatorSpec op = make_shifted_identity(uniform_vector(rng, 5, -3.0, 3.0));
    const SolveResult r = solve(op, fs, config(Algorithm::Egm));
    ASSERT_EQ(r.status, SolveStatus::Converged);
    const SolutionCheck c = check_solution(r.final_point, op, fs);
    EXPECT_LE(c.natural_residual, 10 * 1e-6);
    EXPECT_LE(c.feasibility, 1e-8);
  }
}

TEST(EgmSolve, ProjectionFailureIsReported) {
  const FeasibleSet fs = generate_feasible_set(5, 3, 2);
  const OperatorSpec op = generate_operator(OperatorFamily::Gradient, 5, 3);
  SolverConfig cfg = config(Algorithm::Egm);
  cfg.projection_tol = 1e-15;
  cfg.projection_max_sweeps = 1;
  const SolveResult r = solve(op, fs, cfg, 4.0 * Vector::Ones(5));
  EXPECT_EQ(r.status, SolveStatus::ProjectionFailure);
  EXPECT_FALSE(r.message.empty());
}

// --- Mal-Adap

TEST(MalAdapSolve, ZeroOperatorConvergesAtOnce) {
  const FeasibleSet fs = unit_ball(3);
  const SolveResult r =
      solve(zero_operator(3), fs, config(Algorithm::MalAdap), vec({0.1, 0.2, 0.3}));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.iterations, 1);
  ASSERT_EQ(r.residual_history.size(), 1u);
  EXPECT_EQ(r.residual_history[0].second, 0.0);
}

TEST(MalAdapSolve, FixedPointStaysFixed) {
  const FeasibleSet fs = generate_feasible_set(4, 2, 6);
  const OperatorSpec op = make_shifted_identity(fs.slater_point());
  SolverConfig cfg = config(Algorithm::MalAdap);
  cfg.mal_lambda0 = 0.3;
  const SolveResult r = solve(op, fs, cfg, fs.slater_point());
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.final_point, fs.slater_point());
}

TEST(MalAdapSolve, ResidualRecomputedIndependently) {
  for (int example = 1; example <= 3; ++example) {
    const FeasibleSet fs = generate_feasible_set(5, 2, 50 + example);
    const OperatorSpec op = generate_operator(family_for_example(example), 5, 60 + example);
    SolverConfig cfg = config(Algorithm::MalAdap);
    Vector x, y;
    double lambda = 0.0;
    const SolveResult r = solve(op, fs, cfg, std::nullopt, [&](const IterationEvent& ev) {
      x = ev.point;
      y = ev.next;
      lambda = ev.step;
    });
    ASSERT_EQ(r.status, SolveStatus::Converged) << "example " << example;
    const Vector fy = eval_operator(op, y);
    const double again =
        (y - project_intersection(fs, y - lambda * fy, 1e-13, 100'000)).norm() +
        (x - y).norm();
    EXPECT_LE(again, 1.01 * cfg.tolerance) << "example " << example;
  }
}

// --- check_solution

TEST(CheckSolution, InteriorZeroOfOperator) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 7);
  const Vector target = 0.5 * fs.slater_point() + 0.01 * Vector::Ones(5);
  ASSERT_LT(max_violation(fs, target).value, 0.0);
  const SolutionCheck c = check_solution(target, make_shifted_identity(target), fs);
  EXPECT_EQ(c.natural_residual, 0.0);
  EXPECT_EQ(c.feasibility, 0.0);
  const SolutionCheck w = check_solution(fs.slater_point(),
                                         make_shifted_identity(fs.slater_point()), fs);
  EXPECT_EQ(w.natural_residual, 0.0);
}

TEST(CheckSolution, BoundarySolutionOfBall) {
  // F(x) = x - (2,0) on the unit ball: solution (1,0).
  const FeasibleSet fs = unit_ball(2);
  const OperatorSpec op = make_shifted_identity(vec({2, 0}));
  EXPECT_NEAR(check_solution(vec({1, 0}), op, fs).natural_residual, 0.0, 1e-9);
  const SolutionCheck off = check_solution(vec({0, 0}), op, fs);
  EXPECT_NEAR(off.natural_residual, 1.0, 1e-9);
  EXPECT_NEAR(check_solution(vec({1.5, 0}), op, fs).feasibility, 1.25, 1e-12);
  EXPECT_THROW(check_solution(vec({1, 0}), op, fs, 0.0), InvalidArgumentError);
}

// --- schedule, config, names

TEST(StepsizeSchedule, Values) {
  const StepsizeSchedule s;
  EXPECT_EQ(s(1), 1.0);
  for (long k = 1; k < 1000; ++k) EXPECT_LT(s(k + 1), s(k));
  EXPECT_NEAR(s(1024), std::pow(1024.0, -0.9), 1e-15);
}

TEST(StepsizeSchedule, PartialSums) {
  const StepsizeSchedule s;
  double sum = 0.0, sum_sq = 0.0;
  long hit = 0;
  for (long k = 1; k <= 1'000'000; ++k) {
    const double b = s(k);
    sum += b;
    sum_sq += b * b;
    if (!hit && sum > 20.0) hit = k;
  }
  // The sum keeps growing like 10 k^0.1; the squares stay below 1 + 1/0.8.
  EXPECT_GT(hit, 0);
  EXPECT_LE(hit, static_cast<long>(std::ceil(std::exp(20.0 / (1.0 - 0.9)))));
  EXPECT_GT(sum, 10.0 * (std::pow(1e6, 0.1) - 1.0));
  EXPECT_LT(sum_sq, 1.0 + 1.0 / 0.8);
}

TEST(StepsizeSchedule, ExponentRange) {
  EXPECT_NO_THROW((StepsizeSchedule{1.0}.validate()));
  EXPECT_THROW((StepsizeSchedule{0.5}.validate()), InvalidArgumentError);
  EXPECT_THROW((StepsizeSchedule{1.1}.validate()), InvalidArgumentError);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.theta = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.egm_beta = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.inner_cap = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgumentError);
}

TEST(SolverConfig, WrongLoopForAlgorithm) {
  const FeasibleSet fs = unit_ball(2);
  const OperatorSpec op = zero_operator(2);
  EXPECT_THROW(crm_vip1_solve(vec({0, 0}), op, fs, config(Algorithm::CrmVip2)),
               InvalidArgumentError);
  EXPECT_THROW(ecm_solve(vec({0, 0}), op, fs, config(Algorithm::Bi1)),
               InvalidArgumentError);
  EXPECT_THROW(solve(op, fs, config(Algorithm::CrmVip1), vec({0, 0, 0})),
               DimensionMismatchError);
}

TEST(Names, RoundTrip) {
  for (Algorithm a : kAllAlgorithms) {
    EXPECT_EQ(algorithm_from_string(to_string(a)), a);
  }
  EXPECT_EQ(algorithm_from_string("crm-vip2"), Algorithm::CrmVip2);
  EXPECT_THROW(algorithm_from_string("newton"), InvalidArgumentError);
  for (SolveStatus s : {SolveStatus::Converged, SolveStatus::MaxIterations,
                        SolveStatus::Stalled, SolveStatus::ProjectionFailure}) {
    EXPECT_EQ(solve_status_from_string(to_string(s)), s);
  }
}

// --- run-level properties

TEST(Solve, DeterministicExceptWallTime) {
  const FeasibleSet fs = generate_feasible_set(6, 3, 77);
  const OperatorSpec op = generate_operator(OperatorFamily::ParamonotoneNonGradient, 6, 78);
  for (Algorithm a : kAllAlgorithms) {
    SolverConfig cfg = config(a);
    cfg.max_iterations = 500;
    cfg.seed = 5;
    const SolveResult r1 = solve(op, fs, cfg);
    const SolveResult r2 = solve(op, fs, cfg);
    EXPECT_EQ(r1.status, r2.status) << to_string(a);
    EXPECT_EQ(r1.iterations, r2.iterations) << to_string(a);
    EXPECT_EQ(r1.inner_iterations_total, r2.inner_iterations_total);
    EXPECT_EQ(r1.operator_evals, r2.operator_evals);
    EXPECT_EQ(r1.final_point, r2.final_point) << to_string(a);
    EXPECT_EQ(r1.residual_history, r2.residual_history);
    EXPECT_EQ(r1.ergodic_point.has_value(), r2.ergodic_point.has_value());
  }
}

TEST(Solve, IterationsWithinCapAndHistoryOrdered) {
  const FeasibleSet fs = generate_feasible_set(5, 2, 90);
  for (int example = 1; example <= 3; ++example) {
    const OperatorSpec op = generate_operator(family_for_example(example), 5, 91);
    for (Algorithm a : kAllAlgorithms) {
      SolverConfig cfg = config(a);
      cfg.max_iterations = 50;
      const SolveResult r = solve(op, fs, cfg);
      EXPECT_LE(r.iterations, cfg.max_iterations);
      EXPECT_EQ(r.ergodic_point.has_value(),
                a == Algorithm::CrmVip2 || a == Algorithm::Bi2);
      for (std::size_t i = 0; i + 1 < r.residual_history.size(); ++i) {
        EXPECT_LT(r.residual_history[i].first, r.residual_history[i + 1].first);
      }
    }
  }
}

}  // namespace
}  // namespace crmvip
