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

// Small builders shared by the unit tests.
#ifndef COGMARKET_TESTS_SUPPORT_FIXTURES_HPP_
#define COGMARKET_TESTS_SUPPORT_FIXTURES_HPP_

#include <vector>

#include "cogmarket/channel_model.hpp"
#include "cogmarket/scenario.hpp"

namespace fixture {

using Rows = std::vector<std::vector<double>>;

inline cogmarket::Matrix<double> matrix(const Rows& rows) {
  cogmarket::Matrix<double> m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// Tables from explicit u_su[k][l] and u_pu[l][k]; QoS thresholds default 0.
inline cogmarket::UtilityTables tables(const Rows& u_su, const Rows& u_pu,
                                       std::vector<double> qos = {}) {
  cogmarket::UtilityTables t;
  t.u_su = matrix(u_su);
  t.u_pu = matrix(u_pu);
  const std::size_t num_channels = u_pu.size();
  t.u_pu_free.assign(num_channels, 10.0);
  t.u_pu_self = qos.empty() ? std::vector<double>(num_channels, 0.0) : qos;
  return t;
}

inline cogmarket::ScenarioConfig scenario(int num_sus, int num_channels, int quota,
                                          std::uint64_t seed = 1) {
  cogmarket::ScenarioConfig c;
  c.num_sus = num_sus;
  c.num_channels = num_channels;
  c.quotas = {quota};
  c.seed = seed;
  c.trials = 1;
  return c;
}

}  // namespace fixture

#endif  // COGMARKET_TESTS_SUPPORT_FIXTURES_HPP_
