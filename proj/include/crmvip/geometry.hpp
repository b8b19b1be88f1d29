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

// Halfspace primitives and the circumcentered-reflection step in Pierra's
// product space.
//
// For m sets C_1..C_m in R^n, the product-space step at a diagonal point
// z = (y, ..., y) is the circumcenter of z, R_W(z) and R_D(R_W(z)), where
// R_W reflects block i through C_i and R_D reflects through the diagonal.
// When each C_i is replaced by a halfspace containing it, the circumcenter
// stays on the diagonal and has the closed form
//
//   v_i = P_{H_i}(y) - y,        w = (1/m) sum_i v_i,
//   alpha = sum_i |v_i|^2 / (m |w|^2),
//   T(y) = y + alpha * w.
//
// Note on scaling: v_i is the exact projection displacement
// -(max{0, g_i}/|u_i|^2) u_i. Normalizing by |u_i| instead of |u_i|^2 would
// not reduce to the halfspace projection for m = 1, and breaks equality with
// the product-space circumcenter (circumcenter_oracle) for m >= 2.

#ifndef CRMVIP_GEOMETRY_HPP
#define CRMVIP_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "crmvip/core.hpp"

namespace crmvip {

/// The closed set {z : <normal, z> <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  bool contains(const Vector& z, double slack = 0.0) const {
    return normal.dot(z) <= offset + slack;
  }
};

/// Returned by separating_halfspace when the point already satisfies the
/// constraint; the separator is then the constraint set itself.
struct FeasibleMarker {
  friend bool operator==(FeasibleMarker, FeasibleMarker) { return true; }
};

using Separator = std::variant<FeasibleMarker, Halfspace>;

inline bool is_feasible_marker(const Separator& s) {
  return std::holds_alternative<FeasibleMarker>(s);
}

namespace detail {

inline void check_halfspace(const Vector& x, const Halfspace& h) {
  require_dim("halfspace normal", x.size(), h.normal.size());
  if (h.normal.squaredNorm() == 0.0) {
    throw InvalidHalfspaceError("halfspace has a zero normal vector");
  }
}

// max{0, <a,x> - c} / |a|^2, the multiplier of the projection displacement.
inline double halfspace_excess_ratio(const Vector& x, const Halfspace& h) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return 0.0;
  return excess / h.normal.squaredNorm();
}

}  // namespace detail

inline Vector project_halfspace(const Vector& x, const Halfspace& h) {
  detail::check_halfspace(x, h);
  const double t = detail::halfspace_excess_ratio(x, h);
  if (t == 0.0) return x;
  return x - t * h.normal;
}

inline Vector reflect_halfspace(const Vector& x, const Halfspace& h) {
  return 2.0 * project_halfspace(x, h) - x;
}

/// Subgradient separator {z : g(y) + <u, z - y> <= 0} for the sublevel set
/// {g <= 0} at y. Feasible points get the FeasibleMarker.
inline Separator separating_halfspace(const Vector& y, double g_value,
                                      const Vector& g_gradient) {
  if (g_value <= 0.0) return FeasibleMarker{};
  detail::require_dim("separator gradient", y.size(), g_gradient.size());
  if (g_gradient.squaredNorm() == 0.0) {
    throw DegenerateSeparatorError(
        "constraint is violated but its subgradient is zero");
  }
  return Halfspace{g_gradient, g_gradient.dot(y) - g_value};
}

/// Distance from x to the halfspace (zero inside).
inline double distance_to_halfspace(const Vector& x, const Halfspace& h) {
  detail::check_halfspace(x, h);
  const double excess = h.normal.dot(x) - h.offset;
  return excess <= 0.0 ? 0.0 : excess / h.normal.norm();
}

struct CircumcenterStep {
  std::vector<Vector> displacements;
  Vector mean_displacement;
  double step_scale = 0.0;
  Vector output;
  // Nonzero displacements whose mean vanishes; output is left at the input.
  bool stalled = false;
};

inline CircumcenterStep circumcenter_step(const Vector& y,
                                          std::span<const Separator> separators) {
  if (separators.empty()) {
    throw InvalidArgumentError("circumcenter_step needs at least one separator");
  }
  const auto m = static_cast<double>(separators.size());
  CircumcenterStep step;
  step.displacements.reserve(separators.size());
  step.mean_displacement = Vector::Zero(y.size());

  // Sequential reductions in separator order; results do not depend on
  // caller threading.
  double sum_sq = 0.0;
  for (const Separator& s : separators) {
    Vector v = Vector::Zero(y.size());
    if (const auto* h = std::get_if<Halfspace>(&s)) {
      detail::check_halfspace(y, *h);
      v = -detail::halfspace_excess_ratio(y, *h) * h->normal;
    }
    sum_sq += v.squaredNorm();
    step.mean_displacement += v;
    step.displacements.push_back(std::move(v));
  }
  step.mean_displacement /= m;

  const double w_sq = step.mean_displacement.squaredNorm();
  if (sum_sq == 0.0) {
    step.output = y;
    return step;
  }
  // m|w|^2 is bounded below by |v_i|^2-scale quantities unless the
  // displacements cancel.
  if (m * w_sq <= 1e-28 * sum_sq) {
    step.stalled = true;
    step.output = y;
    return step;
  }
  step.step_scale = sum_sq / (m * w_sq);
  step.output = y + step.step_scale * step.mean_displacement;
  return step;
}

inline CircumcenterStep circumcenter_step(const Vector& y,
                                          const std::vector<Separator>& separators) {
  return circumcenter_step(y, std::span<const Separator>(separators));
}

/// Brute-force circumcenter of three points in any dimension: the point of
/// their affine span equidistant from all three. Coincident points give that
/// point; collinear distinct points give the midpoint of the two extremes.
/// Used as an independent check of circumcenter_step.
inline Vector circumcenter_oracle(const Vector& p0, const Vector& p1,
                                  const Vector& p2) {
  detail::require_dim("circumcenter point", p0.size(), p1.size());
  detail::require_dim("circumcenter point", p0.size(), p2.size());
  const Vector d1 = p1 - p0;
  const Vector d2 = p2 - p0;
  const double g11 = d1.squaredNorm();
  const double g22 = d2.squaredNorm();
  const double g12 = d1.dot(d2);
  const double scale = std::max({g11, g22, 1.0});
  if (g11 <= 1e-30 * scale && g22 <= 1e-30 * scale) return p0;

  const double det = g11 * g22 - g12 * g12;
  if (det <= 1e-13 * g11 * g22) {
    // Collinear or two points coincide: midpoint of the farthest pair.
    const double d01 = g11;
    const double d02 = g22;
    const double d12 = (p2 - p1).squaredNorm();
    if (d01 >= d02 && d01 >= d12) return 0.5 * (p0 + p1);
    if (d02 >= d12) return 0.5 * (p0 + p2);
    return 0.5 * (p1 + p2);
  }
  // Solve [g11 g12; g12 g22] [a; b] = 0.5 [g11; g22].
  Eigen::Matrix2d gram;
  gram << g11, g12, g12, g22;
  const Eigen::Vector2d rhs(0.5 * g11, 0.5 * g22);
  const Eigen::Vector2d coef = gram.fullPivLu().solve(rhs);
  return p0 + coef(0) * d1 + coef(1) * d2;
}

}  // namespace crmvip

#endif  // CRMVIP_GEOMETRY_HPP
