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

// JSON documents for feasible sets, operators, instances and solve results.
// Matrices are row-major nested arrays. Doubles are written with round-trip
// precision, so parse(dump(x)) == x bitwise.
//
// Requires nlohmann/json (json.hpp) on the include path.

#ifndef CRMVIP_SERIALIZATION_HPP
#define CRMVIP_SERIALIZATION_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "crmvip/core.hpp"
#include "crmvip/operators.hpp"
#include "crmvip/sets.hpp"
#include "crmvip/solvers.hpp"

namespace crmvip {

using Json = nlohmann::json;

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Json to_json(const Matrix& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgumentError(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) {
    throw InvalidArgumentError(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

}  // namespace detail

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgumentError("vector must be a JSON array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = detail::number(j[i], "vector entry");
  }
  return v;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgumentError("matrix must be a JSON array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols =
      rows > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgumentError("matrix rows must be arrays of equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      a(i, c) = detail::number(row[static_cast<std::size_t>(c)], "matrix entry");
    }
  }
  return a;
}

inline Json to_json(const FeasibleSet& fs) {
  Json ellipsoids = Json::array();
  for (const Ellipsoid& e : fs.ellipsoids()) {
    ellipsoids.push_back(
        {{"A", to_json(e.quad())}, {"b", to_json(e.lin())}, {"alpha", e.level()}});
  }
  return {{"n", fs.dim()},
          {"m", fs.size()},
          {"ellipsoids", std::move(ellipsoids)},
          {"slater", to_json(fs.slater_point())}};
}

inline FeasibleSet feasible_set_from_json(const Json& j) {
  const Json& list = detail::field(j, "ellipsoids");
  if (!list.is_array()) throw InvalidArgumentError("'ellipsoids' must be an array");
  std::vector<Ellipsoid> ellipsoids;
  for (const Json& e : list) {
    ellipsoids.emplace_back(matrix_from_json(detail::field(e, "A")),
                            vector_from_json(detail::field(e, "b")),
                            detail::number(detail::field(e, "alpha"), "alpha"));
  }
  FeasibleSet fs(std::move(ellipsoids), vector_from_json(detail::field(j, "slater")));
  if (j.contains("n") && j.at("n").get<long>() != fs.dim()) {
    throw DimensionMismatchError("feasible set 'n'", j.at("n").get<long>(), fs.dim());
  }
  if (j.contains("m") &&
      j.at("m").get<long>() != static_cast<long>(fs.size())) {
    throw DimensionMismatchError("feasible set 'm'", j.at("m").get<long>(),
                                 static_cast<long>(fs.size()));
  }
  return fs;
}

inline Json to_json(const OperatorSpec& op) {
  return {{"family", std::string(to_string(op.family))},
          {"A", to_json(op.linear)},
          {"b", to_json(op.cubic_coeffs)},
          {"c", to_json(op.shift)},
          {"block_split", {op.block_split.first, op.block_split.second}}};
}

inline OperatorSpec operator_from_json(const Json& j) {
  OperatorSpec op;
  op.family = operator_family_from_string(
      detail::field(j, "family").get<std::string>());
  op.linear = matrix_from_json(detail::field(j, "A"));
  op.cubic_coeffs = vector_from_json(detail::field(j, "b"));
  op.shift = vector_from_json(detail::field(j, "c"));
  const Json& split = detail::field(j, "block_split");
  if (!split.is_array() || split.size() != 2) {
    throw InvalidArgumentError("'block_split' must be a pair");
  }
  op.block_split = {split[0].get<int>(), split[1].get<int>()};
  const auto n = op.shift.size();
  if (op.linear.rows() != n || op.linear.cols() != n) {
    throw DimensionMismatchError("operator matrix", n, op.linear.rows());
  }
  detail::require_dim("operator cubic coefficients", n, op.cubic_coeffs.size());
  return op;
}

/// A generated problem with its provenance.
struct Instance {
  int example = 1;
  std::string scenario = "A";
  int n = 0;
  int m = 0;
  int index = 0;
  std::uint64_t seed = 0;
  FeasibleSet feasible_set;
  OperatorSpec op;
  Vector initial_point;
};

inline Json to_json(const Instance& inst) {
  return {{"example", inst.example},
          {"scenario", inst.scenario},
          {"n", inst.n},
          {"m", inst.m},
          {"index", inst.index},
          {"seed", inst.seed},
          {"feasible_set", to_json(inst.feasible_set)},
          {"operator", to_json(inst.op)},
          {"initial_point", to_json(inst.initial_point)}};
}

inline Instance instance_from_json(const Json& j) {
  FeasibleSet fs = feasible_set_from_json(detail::field(j, "feasible_set"));
  OperatorSpec op = operator_from_json(detail::field(j, "operator"));
  detail::require_dim("operator dimension", fs.dim(), op.dim());
  Vector x0 = j.contains("initial_point") ? vector_from_json(j.at("initial_point"))
                                          : Vector::Zero(fs.dim());
  detail::require_dim("initial point", fs.dim(), x0.size());
  Instance inst{j.value("example", 0),
                j.value("scenario", std::string()),
                static_cast<int>(fs.dim()),
                static_cast<int>(fs.size()),
                j.value("index", 0),
                j.value("seed", std::uint64_t{0}),
                std::move(fs),
                std::move(op),
                std::move(x0)};
  return inst;
}

inline Json to_json(const SolveResult& r, bool with_history = false) {
  Json out = {{"status", std::string(to_string(r.status))},
              {"iterations", r.iterations},
              {"inner_iterations", r.inner_iterations_total},
              {"operator_evals", r.operator_evals},
              {"wall_time_ns", static_cast<std::int64_t>(r.wall_time.count())},
              {"final_point", to_json(r.final_point)}};
  if (r.ergodic_point) out["ergodic_point"] = to_json(*r.ergodic_point);
  if (r.natural_residual) out["natural_residual"] = *r.natural_residual;
  if (r.feasibility) out["feasibility"] = *r.feasibility;
  if (!r.message.empty()) out["message"] = r.message;
  if (with_history) {
    Json hist = Json::array();
    for (const auto& [k, res] : r.residual_history) hist.push_back({k, res});
    out["residual_history"] = std::move(hist);
  }
  return out;
}

/// Accepts a bare array, {"point": [...]} or a solve result
/// ({"final_point": [...]}).
inline Vector point_from_json(const Json& j) {
  if (j.is_array()) return vector_from_json(j);
  if (j.is_object()) {
    if (j.contains("point")) return vector_from_json(j.at("point"));
    if (j.contains("final_point")) return vector_from_json(j.at("final_point"));
  }
  throw InvalidArgumentError("point file must hold an array, 'point' or 'final_point'");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgumentError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

/// Shortest round-trip decimal form, '.' separator regardless of locale.
/// Non-finite values print as inf, -inf or nan.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Inverse of format_double.
inline double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgumentError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

/// "iteration,residual" rows.
inline void write_trace_csv(std::ostream& out, const SolveResult& r) {
  out << "iteration,residual\n";
  for (const auto& [k, res] : r.residual_history) {
    out << k << ',' << format_double(res) << '\n';
  }
}

}  // namespace crmvip

#endif  // CRMVIP_SERIALIZATION_HPP
