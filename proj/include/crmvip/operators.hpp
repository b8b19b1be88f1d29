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

// Test operators F(x) = A x + G(x) + c with G(x)_i = b_i x_i^3.
//
//   Gradient                  A = M M^T, b >= 0: the gradient of
//                             f(x) = 1/2 <x,Ax> + <c,x> + 1/4 sum b_i x_i^4.
//   ParamonotoneNonGradient   A = blkdiag(A1, A2), A1 = M1 M1^T,
//                             A2 = M2 M2^T + B + D (B skew, D > 0 diagonal).
//   MonotoneNonParamonotone   A = blkdiag(A1, A2), A2 skew-symmetric.

#ifndef CRMVIP_OPERATORS_HPP
#define CRMVIP_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "crmvip/core.hpp"
#include "crmvip/random.hpp"
#include "crmvip/sets.hpp"

namespace crmvip {

enum class OperatorFamily { Gradient, ParamonotoneNonGradient, MonotoneNonParamonotone };

inline std::string_view to_string(OperatorFamily f) {
  switch (f) {
    case OperatorFamily::Gradient: return "gradient";
    case OperatorFamily::ParamonotoneNonGradient: return "paramonotone";
    case OperatorFamily::MonotoneNonParamonotone: return "monotone";
  }
  return "?";
}

inline OperatorFamily operator_family_from_string(std::string_view s) {
  if (s == "gradient") return OperatorFamily::Gradient;
  if (s == "paramonotone") return OperatorFamily::ParamonotoneNonGradient;
  if (s == "monotone") return OperatorFamily::MonotoneNonParamonotone;
  throw InvalidArgumentError("unknown operator family '" + std::string(s) + "'");
}

/// Experiment number (1, 2, 3) to operator family.
inline OperatorFamily family_for_example(int example) {
  switch (example) {
    case 1: return OperatorFamily::Gradient;
    case 2: return OperatorFamily::ParamonotoneNonGradient;
    case 3: return OperatorFamily::MonotoneNonParamonotone;
    default:
      throw InvalidArgumentError("example must be 1, 2 or 3, got " +
                                 std::to_string(example));
  }
}

struct OperatorSpec {
  OperatorFamily family = OperatorFamily::Gradient;
  Matrix linear;
  Vector cubic_coeffs;
  Vector shift;
  // (n1, n2) for the block families; (n, 0) for Gradient.
  std::pair<int, int> block_split{0, 0};

  Eigen::Index dim() const { return shift.size(); }
};

inline Vector eval_operator(const OperatorSpec& op, const Vector& x) {
  detail::require_dim("operator argument", op.dim(), x.size());
  Vector out = op.linear * x + op.shift;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double b = op.cubic_coeffs(i);
    if (b != 0.0) out(i) += b * x(i) * x(i) * x(i);
  }
  return out;
}

/// F(x) = x - target: strongly monotone with the unique zero `target`.
inline OperatorSpec make_shifted_identity(const Vector& target) {
  const auto n = target.size();
  return {OperatorFamily::Gradient, Matrix::Identity(n, n), Vector::Zero(n),
          -target, {static_cast<int>(n), 0}};
}

namespace detail {

inline Matrix gram_factor(Rng& rng, Eigen::Index n) {
  const Matrix m = uniform_matrix(rng, n, n, -1.0, 1.0);
  Matrix g = m * m.transpose();
  return 0.5 * (g + g.transpose());  // exactly symmetric
}

inline Matrix skew_factor(Rng& rng, Eigen::Index n) {
  const Matrix m = uniform_matrix(rng, n, n, -1.0, 1.0);
  return 0.5 * (m - m.transpose());
}

}  // namespace detail

inline OperatorSpec generate_operator(OperatorFamily family, int n,
                                      std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("operator dimension must be >= 1");
  if (family != OperatorFamily::Gradient && n < 2) {
    throw InvalidArgumentError("block operator families need n >= 2");
  }
  Rng rng(seed);
  OperatorSpec op;
  op.family = family;
  op.cubic_coeffs = Vector::Zero(n);
  if (family == OperatorFamily::Gradient) {
    op.linear = detail::gram_factor(rng, n);
    op.cubic_coeffs = uniform_vector(rng, n, 0.0, 1.0);
    op.block_split = {n, 0};
  } else {
    const int n1 = (n + 1) / 2;
    const int n2 = n - n1;
    op.block_split = {n1, n2};
    op.linear = Matrix::Zero(n, n);
    op.linear.topLeftCorner(n1, n1) = detail::gram_factor(rng, n1);
    Matrix lower;
    if (family == OperatorFamily::ParamonotoneNonGradient) {
      lower = detail::gram_factor(rng, n2) + detail::skew_factor(rng, n2);
      const Vector diag = uniform_vector(rng, n2, 0.1, 1.1);
      lower.diagonal() += diag;
    } else {
      lower = detail::skew_factor(rng, n2);
    }
    op.linear.bottomRightCorner(n2, n2) = lower;
  }
  do {
    op.shift = uniform_vector(rng, n, -1.0, 1.0);
  } while (op.shift.squaredNorm() == 0.0);
  return op;
}

/// Rank with singular values above 1e-8 * sigma_max counted.
inline Eigen::Index numerical_rank(const Matrix& a) {
  if (a.size() == 0) return 0;
  const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return 0;
  return (sv.array() > 1e-8 * smax).count();
}

enum class Monotonicity { Paramonotone, MonotoneOnly };

/// An affine monotone map x -> A x + c is paramonotone iff
/// rank(A + A^T) = rank(A). The cubic term is the gradient of a separable
/// convex function and does not change the class.
inline Monotonicity classify_monotonicity(const OperatorSpec& op) {
  const Matrix sym = op.linear + op.linear.transpose();
  return numerical_rank(sym) == numerical_rank(op.linear)
             ? Monotonicity::Paramonotone
             : Monotonicity::MonotoneOnly;
}

/// Spectral norm of A from a fixed number of power iterations on A^T A.
inline double spectral_norm_estimate(const Matrix& a, int iterations = 50) {
  if (a.size() == 0) return 0.0;
  Vector v = Vector::Ones(a.cols()).normalized();
  double estimate = 0.0;
  for (int i = 0; i < iterations; ++i) {
    const Vector w = a.transpose() * (a * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    estimate = std::sqrt(norm);
    v = w / norm;
  }
  return estimate;
}

/// Lipschitz constant estimate of F on C: |A|_2 plus, for a nonzero cubic
/// term, 3 max_i b_i R^2 with R the radius of a ball about 0 containing C.
inline double lipschitz_estimate(const OperatorSpec& op, const FeasibleSet& fs) {
  double estimate = spectral_norm_estimate(op.linear);
  const double bmax = op.cubic_coeffs.size() ? op.cubic_coeffs.maxCoeff() : 0.0;
  if (bmax > 0.0) {
    const double r = bounding_radius(fs);
    estimate += 3.0 * bmax * r * r;
  }
  return std::max(estimate, 1e-12);
}

}  // namespace crmvip

#endif  // CRMVIP_OPERATORS_HPP
