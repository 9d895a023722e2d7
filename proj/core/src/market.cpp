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

#include "cogmarket/market.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cogmarket/rng.hpp"

namespace cogmarket {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_su(const Valuation& valuation, int k) {
  if (k < 0 || k >= valuation.num_sus()) throw std::out_of_range("SU index out of range");
}

void check_prices(const Valuation& valuation, const PriceVector& prices) {
  if (prices.size() != idx(valuation.num_channels()))
    throw std::invalid_argument("one price per channel required");
}

double bundle_price(const ChannelSet& bundle, const PriceVector& prices) {
  double total = 0.0;
  for (ChannelIndex l : bundle) total += prices.at(idx(l));
  return total;
}

}  // namespace

double satiated_utility(const Valuation& valuation, int k,
                        const ChannelSet& offered) {
  check_su(valuation, k);
  std::vector<double> values;
  values.reserve(offered.size());
  for (ChannelIndex l : offered) {
    if (l < 0 || l >= valuation.num_channels())
      throw std::out_of_range("channel index out of range");
    values.push_back(valuation(k, l));
  }
  const auto take = std::min(values.size(), idx(valuation.quotas[idx(k)]));
  std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(take),
                    values.end(), std::greater<>());
  return std::accumulate(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(take),
                         0.0);
}

double net_utility(const Valuation& valuation, int k, const ChannelSet& bundle,
                   const PriceVector& prices) {
  check_prices(valuation, prices);
  return satiated_utility(valuation, k, bundle) - bundle_price(bundle, prices);
}

DemandSet compute_demand(const Valuation& valuation, int k,
                         const PriceVector& prices) {
  check_su(valuation, k);
  check_prices(valuation, prices);
  for (double p : prices) {
    if (!(p > 0.0)) throw std::invalid_argument("demand requires strictly positive prices");
  }
  const int num_channels = valuation.num_channels();
  std::vector<double> surplus(idx(num_channels));
  std::vector<ChannelIndex> order(idx(num_channels));
  for (ChannelIndex l = 0; l < num_channels; ++l) {
    surplus[idx(l)] = valuation(k, l) - prices[idx(l)];
    order[idx(l)] = l;
  }
  // Ties resolved by channel index keeps the ranking strict.
  std::sort(order.begin(), order.end(), [&](ChannelIndex a, ChannelIndex b) {
    return surplus[idx(a)] > surplus[idx(b)] ||
           (surplus[idx(a)] == surplus[idx(b)] && a < b);
  });
  DemandSet demand;
  const auto quota = idx(valuation.quotas[idx(k)]);
  for (ChannelIndex l : order) {
    if (demand.size() == quota || !(surplus[idx(l)] > 0.0)) break;
    demand.push_back(l);
  }
  std::sort(demand.begin(), demand.end());
  return demand;
}

int requirement(const ChannelSet& bundle, const DemandSet& demand) {
  return static_cast<int>(intersection(bundle, demand).size());
}

ChannelSet excess_demand(std::span<const DemandSet> demands, int num_channels) {
  std::vector<int> count(idx(num_channels), 0);
  for (const auto& demand : demands)
    for (ChannelIndex l : demand) ++count.at(idx(l));
  ChannelSet excess;
  for (ChannelIndex l = 0; l < num_channels; ++l)
    if (count[idx(l)] >= 2) excess.push_back(l);
  return excess;
}

long auction_round_bound(const Valuation& valuation, double alpha) {
  double max_value = 0.0;
  for (double v : valuation.value.values()) max_value = std::max(max_value, v);
  return static_cast<long>(valuation.num_channels()) *
         (static_cast<long>(std::ceil(max_value / alpha)) + 1);
}

AuctionResult run_english_auction(const Valuation& valuation,
                                  const AuctionOptions& options) {
  if (!(options.alpha > 0.0) || !std::isfinite(options.alpha))
    throw std::invalid_argument("alpha must be > 0");
  if (!(options.initial_price > 0.0) || !std::isfinite(options.initial_price))
    throw std::invalid_argument("initial price must be > 0");
  for (double v : valuation.value.values())
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite utility");

  const int num_sus = valuation.num_sus();
  const int num_channels = valuation.num_channels();
  const long bound = auction_round_bound(valuation, options.alpha);

  AuctionResult result;
  result.demand_messages_per_su.assign(idx(num_sus), 0);
  PriceVector prices(idx(num_channels), options.initial_price);
  std::vector<DemandSet> demands(idx(num_sus));
  std::vector<DemandSet> previous;

  for (int t = 0;; ++t) {
    for (int k = 0; k < num_sus; ++k) {
      demands[idx(k)] = compute_demand(valuation, k, prices);
      const bool changed = t == 0 || demands[idx(k)] != previous[idx(k)];
      if (!options.broadcast_on_change_only || changed) {
        ++result.demand_messages_per_su[idx(k)];
        ++result.demand_messages;
      }
    }
    ChannelSet excess = excess_demand(demands, num_channels);
    if (options.record_history) {
      result.history.push_back({t, prices, demands, excess, result.demand_messages});
    }
    if (excess.empty()) break;
    for (ChannelIndex l : excess) prices[idx(l)] += options.alpha;
    ++result.iterations;
    if (result.iterations > bound)
      throw std::logic_error("auction exceeded its round bound");
    previous = demands;
  }

  WalrasOutcome& outcome = result.outcome;
  outcome.prices = prices;
  outcome.allocation = demands;
  std::vector<char> held(idx(num_channels), 0);
  for (int k = 0; k < num_sus; ++k) {
    for (ChannelIndex l : demands[idx(k)]) held[idx(l)] = 1;
    outcome.welfare += satiated_utility(valuation, k, demands[idx(k)]);
  }
  for (ChannelIndex l = 0; l < num_channels; ++l)
    if (!held[idx(l)]) outcome.unallocated.push_back(l);
  return result;
}

std::vector<ChannelSet> exhaustive_demand_sets(const Valuation& valuation,
                                               int k, const PriceVector& prices,
                                               double tolerance) {
  check_su(valuation, k);
  check_prices(valuation, prices);
  const int num_channels = valuation.num_channels();
  if (num_channels > 20) throw std::invalid_argument("exhaustive demand limited to L <= 20");
  const std::uint64_t subsets = std::uint64_t{1} << num_channels;
  std::vector<double> value(subsets);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    value[mask] = net_utility(valuation, k, set_from_mask(mask, num_channels), prices);
    best = std::max(best, value[mask]);
  }
  std::vector<ChannelSet> maximizers;
  for (std::uint64_t mask = 0; mask < subsets; ++mask)
    if (value[mask] >= best - tolerance)
      maximizers.push_back(set_from_mask(mask, num_channels));
  return maximizers;
}

WalrasCheck diagnose_walrasian(const WalrasOutcome& outcome,
                               const Valuation& valuation,
                               double initial_price, double tolerance) {
  WalrasCheck check;
  const int num_sus = valuation.num_sus();
  const int num_channels = valuation.num_channels();
  if (outcome.allocation.size() != idx(num_sus) ||
      outcome.prices.size() != idx(num_channels))
    return check;

  // (a) partition of the channel set.
  std::vector<int> owners(idx(num_channels), 0);
  bool valid = true;
  auto mark = [&](const ChannelSet& set) {
    if (!std::is_sorted(set.begin(), set.end())) valid = false;
    for (ChannelIndex l : set) {
      if (l < 0 || l >= num_channels) {
        valid = false;
        continue;
      }
      ++owners[idx(l)];
    }
  };
  for (const auto& set : outcome.allocation) mark(set);
  mark(outcome.unallocated);
  check.partition_valid =
      valid && std::all_of(owners.begin(), owners.end(), [](int c) { return c == 1; });
  if (!check.partition_valid) return check;

  // (b) every SU holds a net-utility maximizing bundle.
  check.demands_maximal = true;
  for (int k = 0; k < num_sus && check.demands_maximal; ++k) {
    const ChannelSet& held = outcome.allocation[idx(k)];
    const double held_value = net_utility(valuation, k, held, outcome.prices);
    double best = held_value;
    if (num_channels <= 12) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << num_channels); ++mask)
        best = std::max(best, net_utility(valuation, k, set_from_mask(mask, num_channels),
                                          outcome.prices));
    } else {
      auto consider = [&](const ChannelSet& bundle) {
        best = std::max(best, net_utility(valuation, k, bundle, outcome.prices));
      };
      bool positive = std::all_of(outcome.prices.begin(), outcome.prices.end(),
                                  [](double p) { return p > 0.0; });
      if (positive) consider(compute_demand(valuation, k, outcome.prices));
      for (ChannelIndex add = 0; add < num_channels; ++add) {
        if (contains(held, add)) continue;
        ChannelSet grown = held;
        grown.insert(std::lower_bound(grown.begin(), grown.end(), add), add);
        consider(grown);
        for (ChannelIndex drop : held) {
          ChannelSet swapped = grown;
          swapped.erase(std::lower_bound(swapped.begin(), swapped.end(), drop));
          consider(swapped);
        }
      }
      for (ChannelIndex drop : held) {
        ChannelSet shrunk = held;
        shrunk.erase(std::lower_bound(shrunk.begin(), shrunk.end(), drop));
        consider(shrunk);
      }
      Rng rng(derive_seed(0x5eed, static_cast<std::uint64_t>(k), Stream::kVerification));
      for (int sample = 0; sample < 256; ++sample) {
        ChannelSet bundle;
        for (ChannelIndex l = 0; l < num_channels; ++l)
          if (rng.below(2) == 1) bundle.push_back(l);
        consider(bundle);
      }
    }
    check.demands_maximal = held_value >= best - tolerance;
  }

  // (c) unsold channels sit at the price floor.
  check.unallocated_priced_at_floor = std::all_of(
      outcome.unallocated.begin(), outcome.unallocated.end(), [&](ChannelIndex l) {
        return outcome.prices[idx(l)] <= initial_price + tolerance;
      });
  return check;
}

bool verify_walrasian(const WalrasOutcome& outcome, const Valuation& valuation,
                      double initial_price, double tolerance) {
  return diagnose_walrasian(outcome, valuation, initial_price, tolerance).ok();
}

bool gross_substitutes_check(const Valuation& valuation, int k,
                             const PriceVector& prices,
                             const PriceVector& raised_prices) {
  check_prices(valuation, prices);
  check_prices(valuation, raised_prices);
  for (std::size_t l = 0; l < prices.size(); ++l) {
    if (!(prices[l] > 0.0) || !(raised_prices[l] >= prices[l]))
      throw std::invalid_argument("gross substitutes check needs 0 < p <= p'");
  }
  const DemandSet before = compute_demand(valuation, k, prices);
  ChannelSet unchanged;
  for (ChannelIndex l : before)
    if (raised_prices[idx(l)] == prices[idx(l)]) unchanged.push_back(l);
  if (is_subset(unchanged, compute_demand(valuation, k, raised_prices))) return true;
  if (valuation.num_channels() > 16) return false;
  for (const auto& bundle : exhaustive_demand_sets(valuation, k, raised_prices))
    if (is_subset(unchanged, bundle)) return true;
  return false;
}

}  // namespace cogmarket
