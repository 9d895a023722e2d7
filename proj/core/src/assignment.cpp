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

#include "cogmarket/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cogmarket {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_problem(const AssignmentProblem& problem) {
  if (problem.quotas.size() != idx(problem.num_sus()))
    throw std::invalid_argument("one quota per SU required");
  for (int q : problem.quotas)
    if (q < 1) throw std::invalid_argument("quotas must be >= 1");
  for (double v : problem.value.values())
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("assignment values must be finite and >= 0");
}

}  // namespace

std::vector<int> solve_min_cost_assignment(const Matrix<double>& cost) {
  // Shortest augmenting path with row/column potentials, O(n^3).
  const std::size_t n = cost.rows();
  if (cost.cols() != n) throw std::invalid_argument("cost matrix must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internally; column 0 is the virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> column_of(n, -1);
  for (std::size_t j = 1; j <= n; ++j)
    if (row_of[j] != 0) column_of[row_of[j] - 1] = static_cast<int>(j - 1);
  return column_of;
}

AssignmentResult hungarian_assign(const AssignmentProblem& problem) {
  check_problem(problem);
  const int num_sus = problem.num_sus();
  const int num_channels = problem.num_channels();

  std::vector<SuIndex> copy_owner;
  for (SuIndex k = 0; k < num_sus; ++k)
    copy_owner.insert(copy_owner.end(), idx(problem.quotas[idx(k)]), k);

  // Zero-padded square: surplus rows or columns are dummies worth nothing.
  const std::size_t n = std::max(copy_owner.size(), idx(num_channels));
  double max_value = 0.0;
  for (double v : problem.value.values()) max_value = std::max(max_value, v);
  Matrix<double> cost(n, n, max_value);
  for (std::size_t r = 0; r < copy_owner.size(); ++r)
    for (ChannelIndex l = 0; l < num_channels; ++l)
      cost(r, idx(l)) = max_value - problem(copy_owner[r], l);

  const std::vector<int> column_of = solve_min_cost_assignment(cost);
  AssignmentResult result{Matching::unmatched(num_sus, num_channels), 0.0};
  for (std::size_t r = 0; r < copy_owner.size(); ++r) {
    const int l = column_of[r];
    if (l < 0 || l >= num_channels) continue;
    if (problem(copy_owner[r], l) > 0.0) result.matching.assign(copy_owner[r], l);
  }
  result.welfare = assignment_welfare(problem, result.matching.channel_of);
  return result;
}

AssignmentResult brute_force_assign(const AssignmentProblem& problem) {
  check_problem(problem);
  const int num_sus = problem.num_sus();
  const int num_channels = problem.num_channels();
  if (num_channels > 10 || num_sus > 6)
    throw std::invalid_argument("brute force limited to L <= 10 and K <= 6");

  std::vector<int> remaining(problem.quotas);
  std::vector<SuIndex> current(idx(num_channels), kSelfMatched);
  std::vector<SuIndex> best_assignment = current;
  double best = -1.0;

  // Depth-first over channels in index order; partial sums accumulate in the
  // same order assignment_welfare uses, so equal assignments compare equal.
  auto search = [&](auto&& self, int l, double partial) -> void {
    if (l == num_channels) {
      if (partial > best) {
        best = partial;
        best_assignment = current;
      }
      return;
    }
    current[idx(l)] = kSelfMatched;
    self(self, l + 1, partial);
    for (SuIndex k = 0; k < num_sus; ++k) {
      if (remaining[idx(k)] == 0) continue;
      --remaining[idx(k)];
      current[idx(l)] = k;
      self(self, l + 1, partial + problem(k, l));
      ++remaining[idx(k)];
    }
    current[idx(l)] = kSelfMatched;
  };
  search(search, 0, 0.0);

  AssignmentResult result{Matching::unmatched(num_sus, num_channels), 0.0};
  for (ChannelIndex l = 0; l < num_channels; ++l)
    if (best_assignment[idx(l)] != kSelfMatched)
      result.matching.assign(best_assignment[idx(l)], l);
  result.welfare = assignment_welfare(problem, result.matching.channel_of);
  return result;
}

Matching random_matching(std::span<const int> quotas, int num_channels, Rng& rng) {
  std::vector<SuIndex> copies;
  for (std::size_t k = 0; k < quotas.size(); ++k) {
    if (quotas[k] < 1) throw std::invalid_argument("quotas must be >= 1");
    copies.insert(copies.end(), idx(quotas[k]), static_cast<SuIndex>(k));
  }
  std::vector<ChannelIndex> channels(idx(num_channels));
  for (ChannelIndex l = 0; l < num_channels; ++l) channels[idx(l)] = l;
  rng.shuffle(copies.begin(), copies.end());
  rng.shuffle(channels.begin(), channels.end());
  Matching m = Matching::unmatched(static_cast<int>(quotas.size()), num_channels);
  const std::size_t pairs = std::min(copies.size(), channels.size());
  for (std::size_t i = 0; i < pairs; ++i) m.assign(copies[i], channels[i]);
  return m;
}

}  // namespace cogmarket
