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

#ifndef COGMARKET_MARKET_HPP_
#define COGMARKET_MARKET_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "cogmarket/channel_set.hpp"
#include "cogmarket/valuation.hpp"

namespace cogmarket {

using PriceVector = std::vector<double>;

// Channels demanded by one SU; always sorted.
using DemandSet = ChannelSet;

// q_k-satiation: the best value SU k can extract from `offered` using at most
// q_k of its channels. Equals the sum of the q_k largest value[k][l] in the
// set, since every per-channel value is nonnegative.
double satiated_utility(const Valuation& valuation, int k,
                        const ChannelSet& offered);

double net_utility(const Valuation& valuation, int k, const ChannelSet& bundle,
                   const PriceVector& prices);

// Greedy demand oracle: rank channels by value minus price (ties to the lower
// index) and keep the first q_k that are strictly profitable. This is the
// smallest member of the demand correspondence. Throws std::invalid_argument
// if some price is not strictly positive.
DemandSet compute_demand(const Valuation& valuation, int k,
                         const PriceVector& prices);

// How many channels of `bundle` the SU must receive, given its minimal demand.
int requirement(const ChannelSet& bundle, const DemandSet& demand);

// Channels named in two or more demand sets.
ChannelSet excess_demand(std::span<const DemandSet> demands, int num_channels);

// One synchronized round of the ascending auction.
struct AuctionState {
  int iteration = 0;
  PriceVector prices;
  std::vector<DemandSet> demands;
  ChannelSet excess;
  long demand_messages = 0;   // cumulative L-bit broadcasts so far
};

struct WalrasOutcome {
  PriceVector prices;
  ChannelSet unallocated;                 // channels nobody holds
  std::vector<ChannelSet> allocation;     // per SU
  double welfare = 0.0;                   // sum of satiated utilities
};

struct AuctionOptions {
  double alpha = 0.005;
  double initial_price = 0.0025;
  bool broadcast_on_change_only = false;
  bool record_history = true;
};

struct AuctionResult {
  WalrasOutcome outcome;
  std::vector<AuctionState> history;   // empty unless record_history
  int iterations = 0;                  // number of price updates
  long demand_messages = 0;
  std::vector<long> demand_messages_per_su;
};

// Synchronized English auction: every round each SU broadcasts its demand,
// every SU computes the same excess set, and prices in that set rise by
// alpha. Stops once no channel is over-demanded; each SU keeps its final
// demand. Throws std::invalid_argument for non-positive alpha or initial
// price, or non-finite values.
AuctionResult run_english_auction(const Valuation& valuation,
                                  const AuctionOptions& options);

// Upper bound on price updates: L * (max value / alpha + 1).
long auction_round_bound(const Valuation& valuation, double alpha);

struct WalrasCheck {
  bool partition_valid = false;
  bool demands_maximal = false;
  bool unallocated_priced_at_floor = false;
  bool ok() const {
    return partition_valid && demands_maximal && unallocated_priced_at_floor;
  }
};

// Equilibrium conditions with unsold channels priced at the auction floor
// (initial_price) rather than zero. Condition (b) is exhaustive for L <= 12;
// for larger L the comparison set is the greedy demand, random bundles and
// the add/drop/swap neighbourhood of the held bundle.
WalrasCheck diagnose_walrasian(const WalrasOutcome& outcome,
                               const Valuation& valuation,
                               double initial_price, double tolerance);
bool verify_walrasian(const WalrasOutcome& outcome, const Valuation& valuation,
                      double initial_price, double tolerance);

// Every demand-maximizing bundle, by exhaustive search (L <= 20).
std::vector<ChannelSet> exhaustive_demand_sets(const Valuation& valuation,
                                               int k, const PriceVector& prices,
                                               double tolerance = 1e-12);

// For p' >= p: the channels of the demand at p whose price did not move must
// all be kept by some demand-maximizing bundle at p'. Throws
// std::invalid_argument when p' < p somewhere or a price is not positive.
bool gross_substitutes_check(const Valuation& valuation, int k,
                             const PriceVector& prices,
                             const PriceVector& raised_prices);

}  // namespace cogmarket

#endif  // COGMARKET_MARKET_HPP_
