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

#ifndef CRMVIP_RANDOM_HPP
#define CRMVIP_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "crmvip/core.hpp"

namespace crmvip {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive combination of several integers into one seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint64_t p : parts) h = mix_seed(h ^ mix_seed(p));
  return h;
}

inline Matrix uniform_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                             double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  // Row-major fill so the stream order does not depend on Eigen's storage.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Vector uniform_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace crmvip

#endif  // CRMVIP_RANDOM_HPP
