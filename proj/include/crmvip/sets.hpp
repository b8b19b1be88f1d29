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

// Ellipsoidal constraint sets g(x) = <x, A x> + 2 <b, x> - alpha <= 0 and
// their intersections, with exact projections used by the exact-projection
// comparators and by the test oracles.

#ifndef CRMVIP_SETS_HPP
#define CRMVIP_SETS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "crmvip/core.hpp"
#include "crmvip/geometry.hpp"
#include "crmvip/random.hpp"

namespace crmvip {

struct ConstraintValue {
  double value = 0.0;
  Vector gradient;
};

class Ellipsoid {
 public:
  /// Throws InvalidArgumentError unless quad is symmetric (1e-12) and
  /// positive definite and the sublevel set has an interior point.
  Ellipsoid(Matrix quad, Vector lin, double level)
      : quad_(std::move(quad)),
        lin_(std::move(lin)),
        level_(level),
        cache_(std::make_shared<Cache>()) {
    const Eigen::Index n = quad_.rows();
    if (n == 0 || quad_.cols() != n) {
      throw InvalidArgumentError("ellipsoid matrix must be square and nonempty");
    }
    detail::require_dim("ellipsoid linear term", n, lin_.size());
    if ((quad_ - quad_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidArgumentError("ellipsoid matrix is not symmetric");
    }
    Eigen::LLT<Matrix> llt(quad_);
    if (llt.info() != Eigen::Success) {
      throw InvalidArgumentError("ellipsoid matrix is not positive definite");
    }
    center_ = -llt.solve(lin_);
    // g(center) = -(alpha + <b, A^{-1} b>).
    radius_sq_level_ = level_ - lin_.dot(center_);
    if (!(radius_sq_level_ > 0.0)) {
      throw InvalidArgumentError("ellipsoid sublevel set has empty interior");
    }
  }

  Eigen::Index dim() const { return quad_.rows(); }
  const Matrix& quad() const { return quad_; }
  const Vector& lin() const { return lin_; }
  double level() const { return level_; }
  /// Unconstrained minimizer -A^{-1} b.
  const Vector& center() const { return center_; }
  /// The set is {x : <x - c, A (x - c)> <= rho} with this rho.
  double radius_sq_level() const { return radius_sq_level_; }

  double value(const Vector& x) const {
    return x.dot(quad_ * x) + 2.0 * lin_.dot(x) - level_;
  }

  /// Eigen-decomposition of quad, computed on first use and shared by copies.
  const Eigen::SelfAdjointEigenSolver<Matrix>& spectral() const {
    std::call_once(cache_->once, [this] {
      cache_->eig.compute(quad_);
    });
    return cache_->eig;
  }

 private:
  struct Cache {
    std::once_flag once;
    Eigen::SelfAdjointEigenSolver<Matrix> eig;
  };

  Matrix quad_;
  Vector lin_;
  double level_;
  Vector center_;
  double radius_sq_level_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

inline ConstraintValue eval_constraint(const Ellipsoid& e, const Vector& x) {
  detail::require_dim("constraint point", e.dim(), x.size());
  const Vector ax = e.quad() * x;
  return {x.dot(ax) + 2.0 * e.lin().dot(x) - e.level(), 2.0 * (ax + e.lin())};
}

struct Violation {
  double value = 0.0;
  std::size_t index = 0;
};

class FeasibleSet {
 public:
  /// Throws unless every ellipsoid has the same dimension as slater_point
  /// and g_i(slater_point) < 0 for all i.
  FeasibleSet(std::vector<Ellipsoid> ellipsoids, Vector slater_point)
      : ellipsoids_(std::move(ellipsoids)), slater_(std::move(slater_point)) {
    if (ellipsoids_.empty()) {
      throw InvalidArgumentError("feasible set needs at least one ellipsoid");
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const Ellipsoid& e : ellipsoids_) {
      detail::require_dim("slater point", e.dim(), slater_.size());
      worst = std::max(worst, e.value(slater_));
    }
    if (!(worst < 0.0)) {
      throw InvalidArgumentError("slater point is not strictly feasible");
    }
    margin_ = -worst;
  }

  Eigen::Index dim() const { return slater_.size(); }
  std::size_t size() const { return ellipsoids_.size(); }
  const std::vector<Ellipsoid>& ellipsoids() const { return ellipsoids_; }
  const Ellipsoid& operator[](std::size_t i) const { return ellipsoids_[i]; }
  const Vector& slater_point() const { return slater_; }
  double slater_margin() const { return margin_; }

 private:
  std::vector<Ellipsoid> ellipsoids_;
  Vector slater_;
  double margin_ = 0.0;
};

/// max_i g_i(x) and the smallest index attaining it.
inline Violation max_violation(const FeasibleSet& fs, const Vector& x) {
  detail::require_dim("max_violation point", fs.dim(), x.size());
  Violation best{fs[0].value(x), 0};
  for (std::size_t i = 1; i < fs.size(); ++i) {
    const double v = fs[i].value(x);
    if (v > best.value) best = {v, i};
  }
  return best;
}

/// Subgradient separators of every constraint at y, in constraint order.
inline std::vector<Separator> separators_at(const FeasibleSet& fs,
                                            const Vector& y) {
  std::vector<Separator> out;
  out.reserve(fs.size());
  for (const Ellipsoid& e : fs.ellipsoids()) {
    const ConstraintValue c = eval_constraint(e, y);
    out.push_back(separating_halfspace(y, c.value, c.gradient));
  }
  return out;
}

/// Separator of the most violated constraint at y, or FeasibleMarker if
/// y is in C.
inline Separator max_violation_separator(const FeasibleSet& fs,
                                         const Vector& y) {
  const Violation v = max_violation(fs, y);
  if (v.value <= 0.0) return FeasibleMarker{};
  const ConstraintValue c = eval_constraint(fs[v.index], y);
  return separating_halfspace(y, c.value, c.gradient);
}

/// Euclidean projection onto one ellipsoid.
///
/// The KKT system y - x + lambda (A y + b) = 0 gives
/// y(lambda) = (I + lambda A)^{-1} (x - lambda b). In the eigenbasis of A the
/// scalar function phi(lambda) = g(y(lambda)) is strictly decreasing and
/// convex on [0, inf), so Newton started at lambda = 0 increases
/// monotonically to the root without overshooting. Stationarity holds by
/// construction; the reported residual is |g(y)| / |grad g(y)|.
inline Vector project_ellipsoid(const Ellipsoid& e, const Vector& x,
                                double tol) {
  detail::require_dim("projection point", e.dim(), x.size());
  if (!(tol > 0.0)) throw InvalidArgumentError("projection tolerance must be > 0");
  if (e.value(x) <= 0.0) return x;

  const auto& eig = e.spectral();
  const Matrix& q = eig.eigenvectors();
  const Vector& d = eig.eigenvalues();
  const Vector xt = q.transpose() * x;
  const Vector bt = q.transpose() * e.lin();
  // d_j x_j + b_j is invariant in lambda up to the (1 + lambda d_j) factor.
  const Vector s = d.cwiseProduct(xt) + bt;

  auto point = [&](double lambda) -> Vector {
    return (xt - lambda * bt).cwiseQuotient(
        (Vector::Ones(d.size()) + lambda * d));
  };
  auto phi = [&](const Vector& yt) {
    return yt.dot(d.cwiseProduct(yt)) + 2.0 * bt.dot(yt) - e.level();
  };

  constexpr int kMaxIterations = 500;
  double lambda = 0.0;
  Vector yt = xt;
  double value = phi(yt);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    const Vector denom = Vector::Ones(d.size()) + lambda * d;
    const double grad_norm = 2.0 * s.cwiseQuotient(denom).norm();
    residual = std::abs(value) / grad_norm;
    if (residual <= tol) return q * yt;
    const double dphi =
        -2.0 * s.cwiseAbs2().cwiseQuotient(denom.cwiseAbs2().cwiseProduct(denom)).sum();
    if (!(dphi < 0.0)) break;
    const double next = lambda - value / dphi;
    if (!(next > lambda)) break;  // no further progress in floating point
    lambda = next;
    yt = point(lambda);
    value = phi(yt);
  }
  // Newton stalled at machine precision; accept if already tight enough.
  if (residual <= 1e3 * tol) return q * yt;
  throw ProjectionFailure("ellipsoid projection did not converge", q * yt,
                          residual);
}

/// Dykstra's cyclic projection onto the intersection. Stops when the largest
/// single-projection displacement over a full sweep is at most tol.
inline Vector project_intersection(const FeasibleSet& fs, const Vector& x,
                                   double tol = 1e-10,
                                   int max_sweeps = 10'000) {
  detail::require_dim("projection point", fs.dim(), x.size());
  if (!(tol > 0.0)) throw InvalidArgumentError("projection tolerance must be > 0");
  if (max_violation(fs, x).value <= 0.0) return x;
  if (fs.size() == 1) return project_ellipsoid(fs[0], x, tol);

  const double sub_tol = 0.1 * tol;
  Vector current = x;
  std::vector<Vector> increments(fs.size(), Vector::Zero(x.size()));
  double sweep_move = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    sweep_move = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Vector shifted = current + increments[i];
      Vector next = project_ellipsoid(fs[i], shifted, sub_tol);
      increments[i] = shifted - next;
      sweep_move = std::max(sweep_move, (next - current).norm());
      current = std::move(next);
    }
    if (sweep_move <= tol) return current;
  }
  throw ProjectionFailure("Dykstra projection exceeded its sweep cap",
                          current, sweep_move);
}

/// Axis-aligned box containing the ellipsoid.
inline std::pair<Vector, Vector> bounding_box(const Ellipsoid& e) {
  const auto& eig = e.spectral();
  const Matrix& q = eig.eigenvectors();
  // (A^{-1})_jj = sum_k q_jk^2 / d_k
  const Vector inv_diag =
      q.cwiseAbs2() * eig.eigenvalues().cwiseInverse();
  const Vector half = (e.radius_sq_level() * inv_diag).cwiseSqrt();
  return {e.center() - half, e.center() + half};
}

/// Axis-aligned box containing C (intersection of the per-ellipsoid boxes).
inline std::pair<Vector, Vector> bounding_box(const FeasibleSet& fs) {
  auto [lo, hi] = bounding_box(fs[0]);
  for (std::size_t i = 1; i < fs.size(); ++i) {
    auto [l, h] = bounding_box(fs[i]);
    lo = lo.cwiseMax(l);
    hi = hi.cwiseMin(h);
  }
  return {lo, hi};
}

/// Radius of a ball centred at the origin that contains C.
inline double bounding_radius(const FeasibleSet& fs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Ellipsoid& e : fs.ellipsoids()) {
    const double min_eig = e.spectral().eigenvalues().minCoeff();
    best = std::min(best, e.center().norm() +
                              std::sqrt(e.radius_sq_level() / min_eig));
  }
  return best;
}

struct GeneratorParams {
  double regularization = 1e-3;  // gamma in A = M M^T + gamma I
  double margin = 1.0;           // delta: g_i(anchor) = -delta
};

/// Seeded random intersection of m ellipsoids in R^n sharing the strictly
/// feasible anchor point 0: A_i = M_i M_i^T + gamma I with M_i ~ U(-1,1),
/// b_i ~ U(-1,1) and alpha = delta, so g_i(0) = -delta.
inline FeasibleSet generate_feasible_set(int n, int m, std::uint64_t seed,
                                         const GeneratorParams& params = {}) {
  if (n < 1 || m < 1) {
    throw InvalidArgumentError("generate_feasible_set needs n >= 1 and m >= 1");
  }
  Rng rng(seed);
  const Vector anchor = Vector::Zero(n);
  std::vector<Ellipsoid> ellipsoids;
  ellipsoids.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Matrix factor = uniform_matrix(rng, n, n, -1.0, 1.0);
    Matrix quad = factor * factor.transpose();
    quad = 0.5 * (quad + quad.transpose());
    quad.diagonal().array() += params.regularization;
    Vector lin = uniform_vector(rng, n, -1.0, 1.0);
    const double level =
        anchor.dot(quad * anchor) + 2.0 * lin.dot(anchor) + params.margin;
    ellipsoids.emplace_back(std::move(quad), std::move(lin), level);
  }
  return FeasibleSet(std::move(ellipsoids), anchor);
}

}  // namespace crmvip

#endif  // CRMVIP_SETS_HPP
