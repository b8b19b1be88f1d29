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

#ifndef CRMVIP_CORE_HPP
#define CRMVIP_CORE_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace crmvip {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public InvalidArgumentError {
 public:
  DimensionMismatchError(const std::string& what, Eigen::Index expected,
                         Eigen::Index actual)
      : InvalidArgumentError(what + ": expected dimension " +
                             std::to_string(expected) + ", got " +
                             std::to_string(actual)) {}
};

// A halfspace with a zero normal vector.
class InvalidHalfspaceError : public InvalidArgumentError {
 public:
  using InvalidArgumentError::InvalidArgumentError;
};

// Positive constraint value with a zero subgradient: no separating
// halfspace exists.
class DegenerateSeparatorError : public Error {
 public:
  using Error::Error;
};

// An exact projection did not reach its tolerance. Carries the best iterate
// and the residual reached so the caller can report it.
class ProjectionFailure : public Error {
 public:
  ProjectionFailure(const std::string& what, Vector best_iterate,
                    double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        best_iterate_(std::move(best_iterate)),
        residual_(residual) {}

  const Vector& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  Vector best_iterate_;
  double residual_;
};

namespace detail {

inline void require_dim(const char* what, Eigen::Index expected,
                        Eigen::Index actual) {
  if (expected != actual) throw DimensionMismatchError(what, expected, actual);
}

}  // namespace detail
}  // namespace crmvip

#endif  // CRMVIP_CORE_HPP
