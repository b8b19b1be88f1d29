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


// Everything. serialization.hpp and bench.hpp also need json.hpp.

#ifndef CRMVIP_CRMVIP_HPP
#define CRMVIP_CRMVIP_HPP

#include "crmvip/core.hpp"
#include "crmvip/random.hpp"
#include "crmvip/geometry.hpp"
#include "crmvip/sets.hpp"
#include "crmvip/operators.hpp"
#include "crmvip/solvers.hpp"
#include "crmvip/serialization.hpp"
#include "crmvip/bench.hpp"

#endif  // CRMVIP_CRMVIP_HPP
