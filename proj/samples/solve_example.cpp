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


// Minimal library use: generate an Example-2 instance, run CRM-VIP1 and
// CRM-VIP2, and check the answers against the exact projection.

#include <iostream>

#include "crmvip/operators.hpp"
#include "crmvip/sets.hpp"
#include "crmvip/solvers.hpp"

int main() {
  using namespace crmvip;
  const int n = 10;
  const int m = 3;
  const FeasibleSet fs = generate_feasible_set(n, m, /*seed=*/7);
  const OperatorSpec op =
      generate_operator(OperatorFamily::ParamonotoneNonGradient, n, /*seed=*/8);
  const Vector x0 = default_initial_point(n, /*seed=*/9);

  for (Algorithm a : {Algorithm::CrmVip1, Algorithm::CrmVip2}) {
    SolverConfig cfg;
    cfg.algorithm = a;
    const SolveResult r = solve(op, fs, cfg, x0);
    const SolutionCheck c = check_solution(r.final_point, op, fs);
    std::cout << to_string(a) << ": " << to_string(r.status) << " after "
              << r.iterations << " iterations, natural residual "
              << c.natural_residual << ", infeasibility " << c.feasibility << '\n';
  }
  return 0;
}
