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


// Helpers shared by the unit tests and the acceptance runner.

#ifndef CRMVIP_TESTS_SUPPORT_HPP
#define CRMVIP_TESTS_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "crmvip/geometry.hpp"
#include "crmvip/random.hpp"

namespace crmvip::testing {

// (y, ..., y) in R^{nm}.
inline Vector diagonal_embed(const Vector& y, std::size_t m) {
  const auto n = y.size();
  Vector z(n * static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) z.segment(static_cast<Eigen::Index>(i) * n, n) = y;
  return z;
}

// Blockwise reflection through W = H_1 x ... x H_m (the whole space for a
// feasible marker).
inline Vector reflect_product(const Vector& z, const std::vector<Separator>& seps,
                              Eigen::Index n) {
  Vector out = z;
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const auto off = static_cast<Eigen::Index>(i) * n;
    if (const auto* h = std::get_if<Halfspace>(&seps[i])) {
      out.segment(off, n) = reflect_halfspace(z.segment(off, n), *h);
    }
  }
  return out;
}

// Reflection through the diagonal subspace D = {(x, ..., x)}: 2 P_D - I,
// P_D replacing every block by the block mean.
inline Vector reflect_diagonal(const Vector& z, Eigen::Index n) {
  const Eigen::Index m = z.size() / n;
  Vector mean = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) mean += z.segment(i * n, n);
  mean /= static_cast<double>(m);
  return 2.0 * diagonal_embed(mean, static_cast<std::size_t>(m)) - z;
}

// Circumcenter of z, R_W z, R_D R_W z with z = (y, ..., y).
inline Vector product_space_circumcenter(const Vector& y,
                                         const std::vector<Separator>& seps) {
  const Vector z = diagonal_embed(y, seps.size());
  const Vector rw = reflect_product(z, seps, y.size());
  const Vector rdrw = reflect_diagonal(rw, y.size());
  return circumcenter_oracle(z, rw, rdrw);
}

// Largest block distance from c to `expected`, relative to max(1, |expected|).
inline double block_relative_error(const Vector& c, const Vector& expected) {
  const auto n = expected.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.size() / n; ++i) {
    worst = std::max(worst, (c.segment(i * n, n) - expected).norm());
  }
  return worst / std::max(1.0, expected.norm());
}

// Random halfspace list that y violates: normal a ~ U(-1,1)^n, offset set so
// that <a, y> - offset ~ U(0.1, 2).
inline std::vector<Separator> violated_halfspaces(Rng& rng, const Vector& y, int m) {
  std::uniform_real_distribution<double> excess(0.1, 2.0);
  std::vector<Separator> out;
  for (int i = 0; i < m; ++i) {
    Vector a = uniform_vector(rng, y.size(), -1.0, 1.0);
    if (a.norm() < 1e-3) a(0) = 1.0;
    out.push_back(Halfspace{a, a.dot(y) - excess(rng)});
  }
  return out;
}

}  // namespace crmvip::testing

#endif  // CRMVIP_TESTS_SUPPORT_HPP
