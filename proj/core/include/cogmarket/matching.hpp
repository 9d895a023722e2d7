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

#ifndef COGMARKET_MATCHING_HPP_
#define COGMARKET_MATCHING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogmarket/channel_model.hpp"
#include "cogmarket/channel_set.hpp"

namespace cogmarket {

inline constexpr SuIndex kSelfMatched = -1;

// Many-to-one assignment of channels to SUs. A channel with no SU and an SU
// with no channel are self-matched. Both directions are stored and
// is_consistent() checks that they agree.
struct Matching {
  std::vector<SuIndex> channel_of;        // per channel; kSelfMatched if none
  std::vector<ChannelSet> channels_of;    // per SU, sorted

  static Matching unmatched(int num_sus, int num_channels);

  int num_sus() const { return static_cast<int>(channels_of.size()); }
  int num_channels() const { return static_cast<int>(channel_of.size()); }

  void assign(SuIndex k, ChannelIndex l);
  void release(ChannelIndex l);

  bool is_self_matched(SuIndex k) const {
    return channels_of[static_cast<std::size_t>(k)].empty();
  }
  int assigned_count() const;

  // Bidirectional agreement and orthogonality; quota checks need quotas.
  bool is_consistent() const;
  bool respects_quotas(std::span<const int> quotas) const;

  bool operator==(const Matching&) const = default;
};

// Strict preference orders with ties broken towards the lower index. Shared
// by the protocol and the stability checkers so the two always agree.
bool su_prefers(const UtilityTables& tables, SuIndex k, ChannelIndex a,
                ChannelIndex b);
bool pu_prefers(const UtilityTables& tables, ChannelIndex l, SuIndex a,
                SuIndex b);

struct ProposalEvent {
  SuIndex su;
  ChannelIndex channel;
  bool accepted;
};

struct DisqualificationEvent {
  std::size_t proposal;   // index into MessageLog::proposals
  SuIndex su;
  ChannelSet mask;        // every channel the SU may no longer propose to
};

// Everything exchanged between the SUs and the coordinator during one run.
// Proposal messages carry ceil(log2(l)) bits for the 1-based channel index l,
// responses one bit, disqualification messages L bits.
struct MessageLog {
  std::vector<ProposalEvent> proposals;
  std::vector<DisqualificationEvent> disqualifications;
  std::vector<int> proposals_per_su;
  std::vector<long> bits_per_su;
  long bits_total = 0;
};

enum class ProposalOrder { kRoundRobin, kRandom };

struct MatchingOptions {
  ProposalOrder order = ProposalOrder::kRoundRobin;
  std::uint64_t order_seed = 0;   // used by kRandom only
};

struct StableMatchingResult {
  Matching matching;
  MessageLog log;
};

// SU-proposing deferred acceptance with a coordinator answering for the PU
// channels. QoS thresholds are tables.u_pu_self. Throws std::invalid_argument
// on inconsistent dimensions or quotas < 1.
StableMatchingResult run_stable_matching(const UtilityTables& tables,
                                         std::span<const int> quotas,
                                         const MatchingOptions& options = {});

bool is_individually_rational(const Matching& m, const UtilityTables& tables);

// All (k, l) pairs blocking m.
std::vector<std::pair<SuIndex, ChannelIndex>> find_blocking_pairs(
    const Matching& m, const UtilityTables& tables,
    std::span<const int> quotas);

bool is_stable(const Matching& m, const UtilityTables& tables,
               std::span<const int> quotas);

// Worst-case bits one SU exchanges with the coordinator:
// L^2 + L + sum_{l=1..L} ceil(log2 l).
long worst_case_bits(int num_channels);

// ceil(log2(index)) for a 1-based channel index; 0 for index 1.
int proposal_bits(int one_based_channel);

// With every quota >= L, checks that each channel holds the SU the PU ranks
// highest among those with positive rate and QoS-compliant utility (or is
// self-matched when there is none). Throws std::invalid_argument if a quota
// is below L.
bool verify_unique_pu_optimal(const Matching& m, const UtilityTables& tables,
                              std::span<const int> quotas);

}  // namespace cogmarket

#endif  // COGMARKET_MATCHING_HPP_
