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

#include "cogmarket/valuation.hpp"

#include <stdexcept>

namespace cogmarket {

Valuation make_valuation(const UtilityTables& tables, double lambda,
                         std::span<const int> quotas) {
  const auto num_sus = static_cast<std::size_t>(tables.num_sus());
  const auto num_channels = static_cast<std::size_t>(tables.num_channels());
  if (quotas.size() != num_sus) throw std::invalid_argument("one quota per SU required");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  Valuation out{Matrix<double>(num_sus, num_channels),
                std::vector<int>(quotas.begin(), quotas.end())};
  for (std::size_t k = 0; k < num_sus; ++k)
    for (std::size_t l = 0; l < num_channels; ++l)
      out.value(k, l) = lambda * tables.u_su(k, l) + (1.0 - lambda) * tables.u_pu(l, k);
  return out;
}

double assignment_welfare(const Valuation& valuation,
                          std::span<const int> channel_of) {
  if (channel_of.size() != static_cast<std::size_t>(valuation.num_channels()))
    throw std::invalid_argument("assignment does not match the valuation");
  double total = 0.0;
  for (std::size_t l = 0; l < channel_of.size(); ++l) {
    if (channel_of[l] >= 0) total += valuation(channel_of[l], static_cast<int>(l));
  }
  return total;
}

}  // namespace cogmarket
