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

#ifndef COGMARKET_SERIALIZE_HPP_
#define COGMARKET_SERIALIZE_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "cogmarket/experiment.hpp"
#include "cogmarket/market.hpp"
#include "cogmarket/matching.hpp"

namespace cogmarket {

// Fixed CSV header for per-trial records.
inline constexpr const char* kRecordCsvHeader =
    "mechanism,trial,su_sum_rate,pu_sum_rate,welfare,proposals,demands,iterations,bits";

// Shortest round-trip-free rendering with 12 significant digits.
std::string format_number(double value);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_records_jsonl(std::ostream& out, const std::vector<TrialRecord>& records);

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
void write_aggregate_jsonl(std::ostream& out, const std::vector<AggregateRow>& rows);

void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& points);
void write_region_jsonl(std::ostream& out, const std::vector<RegionPoint>& points);

// {"trial", "assignment": {"<channel>": su|null}, "proposals_per_su": [...],
//  "bits_total"} with 0-based indices.
std::string matching_record_json(int trial, const Matching& matching,
                                 const MessageLog& log);

// {"prices", "allocation": [[...] per SU], "unallocated", "welfare"}.
std::string walras_outcome_json(const WalrasOutcome& outcome);

// One object per round: {"t", "prices", "demands": ["0101..." per SU],
// "excess_size"}; the demand strings are the L-bit broadcast messages.
std::string auction_trace_json(const std::vector<AuctionState>& history,
                               int num_channels);

// One JSON line describing a TrialDetail (used by `run --detail`).
std::string trial_detail_json(const TrialDetail& detail);

}  // namespace cogmarket

#endif  // COGMARKET_SERIALIZE_HPP_
