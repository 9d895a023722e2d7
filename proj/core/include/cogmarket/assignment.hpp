// Copyright 2026 The cogmarket Authors.
//
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

#ifndef COGMARKET_ASSIGNMENT_HPP_
#define COGMARKET_ASSIGNMENT_HPP_

#include <span>

#include "cogmarket/matching.hpp"
#include "cogmarket/rng.hpp"
#include "cogmarket/valuation.hpp"

namespace cogmarket {

// Centralized many-to-one assignment problem: maximize the summed per-pair
// value subject to orthogonality and the SU quotas.
using AssignmentProblem = Valuation;

struct AssignmentResult {
  Matching matching;
  double welfare = 0.0;
};

// Optimal assignment by the Hungarian method after expanding each SU into
// q_k unit-quota copies. Pairs of value zero are left unassigned. Throws
// std::invalid_argument on negative or non-finite values.
AssignmentResult hungarian_assign(const AssignmentProblem& problem);

// Exhaustive search over every channel -> {SU, unassigned} map within
// quotas. Throws std::invalid_argument when L > 10 or K > 6.
AssignmentResult brute_force_assign(const AssignmentProblem& problem);

// Uniformly random injection of SU quota copies into channels; exactly
// min(L, sum q_k) channels end up assigned.
Matching random_matching(std::span<const int> quotas, int num_channels, Rng& rng);

// Square min-cost assignment; returns the column chosen for each row.
// Exposed for reuse and testing.
std::vector<int> solve_min_cost_assignment(const Matrix<double>& cost);

}  // namespace cogmarket

#endif  // COGMARKET_ASSIGNMENT_HPP_
