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

#ifndef COGMARKET_VALUATION_HPP_
#define COGMARKET_VALUATION_HPP_

#include <span>
#include <vector>

#include "cogmarket/channel_model.hpp"
#include "cogmarket/matrix.hpp"

namespace cogmarket {

// Additively separable per-pair values
//   value[k][l] = lambda * u_su[k][l] + (1 - lambda) * u_pu[l][k]
// together with the SU quotas. The weighted objective of a bundle B for SU k
// is the sum of value[k][l] over B. Shared by the market and the centralized
// baselines.
struct Valuation {
  Matrix<double> value;
  std::vector<int> quotas;

  int num_sus() const { return static_cast<int>(value.rows()); }
  int num_channels() const { return static_cast<int>(value.cols()); }
  double operator()(int k, int l) const {
    return value(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
  }
};

Valuation make_valuation(const UtilityTables& tables, double lambda,
                         std::span<const int> quotas);

// Weighted objective of a matching-like assignment given as channel -> SU
// (-1 for unassigned), summed in channel order.
double assignment_welfare(const Valuation& valuation,
                          std::span<const int> channel_of);

}  // namespace cogmarket

#endif  // COGMARKET_VALUATION_HPP_
