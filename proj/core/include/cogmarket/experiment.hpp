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

#ifndef COGMARKET_EXPERIMENT_HPP_
#define COGMARKET_EXPERIMENT_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogmarket/assignment.hpp"
#include "cogmarket/market.hpp"
#include "cogmarket/matching.hpp"
#include "cogmarket/scenario.hpp"

namespace cogmarket {

enum class Mechanism { kStableMatching, kEnglishAuction, kHungarian, kRandom };

std::string_view mechanism_name(Mechanism m);
// Accepts "stable-matching", "english-auction", "hungarian", "random".
Mechanism parse_mechanism(std::string_view name);
std::vector<Mechanism> parse_mechanism_list(std::string_view comma_separated);
const std::vector<Mechanism>& all_mechanisms();

// How the PU sum rate counts channels no SU holds.
enum class PuMetric {
  kInterferenceFree,   // u_pu_free: the "no SUs around" reference
  kSelfMatched,        // u_pu_self: only assigned channels count when QoS = 0
};

struct TrialRecord {
  int trial = 0;
  Mechanism mechanism = Mechanism::kHungarian;
  double su_sum_rate = 0.0;
  double pu_sum_rate = 0.0;
  double welfare = 0.0;
  double proposals = 0.0;   // mean proposals per SU (stable matching)
  double demands = 0.0;     // mean demand broadcasts per SU (auction)
  long iterations = 0;      // auction price updates
  long bits = 0;            // bits exchanged
  bool verified = true;     // equilibrium/stability re-check passed

  bool operator==(const TrialRecord&) const = default;
};

// Full per-trial output, handed to an optional observer.
struct TrialDetail {
  int trial = 0;
  Mechanism mechanism = Mechanism::kHungarian;
  Matching matching;
  const MessageLog* log = nullptr;             // stable matching only
  const AuctionResult* auction = nullptr;      // english auction only
};

struct ExperimentOptions {
  PuMetric pu_metric = PuMetric::kInterferenceFree;
  // Record full auction price histories for the observer.
  bool record_auction_history = false;
  std::function<void(const TrialDetail&)> observer;
};

// Per-trial metrics for one assignment, computed from the utility tables.
TrialRecord score_matching(const Matching& matching, const UtilityTables& tables,
                           const Valuation& valuation, PuMetric metric);

// Draws config.trials realizations and runs every mechanism on the same
// tables, trial-major. Stable matchings are re-checked for stability (a
// failure throws std::logic_error); auction outcomes are re-checked against
// the equilibrium conditions with tolerance alpha * L and the result lands
// in TrialRecord::verified.
std::vector<TrialRecord> run_experiment(const ScenarioConfig& config,
                                        const std::vector<Mechanism>& mechanisms,
                                        const ExperimentOptions& options = {});

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
};

struct AggregateRow {
  std::string axis;
  double value = 0.0;
  Mechanism mechanism = Mechanism::kHungarian;
  int trials = 0;
  Summary su_sum_rate, pu_sum_rate, welfare, proposals, demands, iterations, bits;
  // Relative welfare gap to the Hungarian optimum of the same trial; only
  // present when hungarian ran too.
  std::optional<Summary> welfare_loss;
  double verified_fraction = 1.0;
};

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records,
                                    const std::vector<Mechanism>& mechanisms,
                                    std::string_view axis = "", double value = 0.0);

enum class SweepAxis { kSnrDb, kAlpha, kNumSus, kQuota };
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

// Returns config with one parameter replaced. When channels_per_su is set and
// the axis is K, L follows as round(channels_per_su * K).
ScenarioConfig with_axis_value(const ScenarioConfig& config, SweepAxis axis,
                               double value,
                               std::optional<double> channels_per_su = std::nullopt);

std::vector<AggregateRow> sweep(const ScenarioConfig& config, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Mechanism>& mechanisms,
                                const ExperimentOptions& options = {},
                                std::optional<double> channels_per_su = std::nullopt);

// Boundary of the average (SU sum rate, PU sum rate) region traced by the
// weighted-sum optimum over config.lambda_values(). "quoted" keeps the
// configured quotas, "maximum" lifts them to L. Rates count assigned
// channels only.
struct RegionPoint {
  std::string bound;
  double lambda = 0.0;
  double su_sum_rate = 0.0;
  double pu_sum_rate = 0.0;
};
std::vector<RegionPoint> region_boundary(const ScenarioConfig& config);

}  // namespace cogmarket

#endif  // COGMARKET_EXPERIMENT_HPP_
