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

#include "cogmarket/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace cogmarket {

namespace {

using nlohmann::json;

json matching_json(const Matching& m) {
  json assignment = json::object();
  for (std::size_t l = 0; l < m.channel_of.size(); ++l) {
    const SuIndex k = m.channel_of[l];
    assignment[std::to_string(l)] = k == kSelfMatched ? json(nullptr) : json(k);
  }
  return assignment;
}

json outcome_json(const WalrasOutcome& outcome) {
  return json{{"prices", outcome.prices},
              {"allocation", outcome.allocation},
              {"unallocated", outcome.unallocated},
              {"welfare", outcome.welfare}};
}

json trace_json(const std::vector<AuctionState>& history, int num_channels) {
  json rounds = json::array();
  for (const auto& state : history) {
    json demands = json::array();
    for (const auto& d : state.demands) demands.push_back(bit_string(d, num_channels));
    rounds.push_back({{"t", state.iteration},
                      {"prices", state.prices},
                      {"demands", demands},
                      {"excess_size", state.excess.size()}});
  }
  return rounds;
}

json summary_json(const Summary& s) { return json{{"mean", s.mean}, {"se", s.std_error}}; }

void write_summary(std::ostream& out, const Summary& s) {
  out << ',' << format_number(s.mean) << ',' << format_number(s.std_error);
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& r : records) {
    out << mechanism_name(r.mechanism) << ',' << r.trial << ','
        << format_number(r.su_sum_rate) << ',' << format_number(r.pu_sum_rate) << ','
        << format_number(r.welfare) << ',' << format_number(r.proposals) << ','
        << format_number(r.demands) << ',' << r.iterations << ',' << r.bits << '\n';
  }
}

void write_records_jsonl(std::ostream& out, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) {
    json line = {{"mechanism", mechanism_name(r.mechanism)},
                 {"trial", r.trial},
                 {"su_sum_rate", r.su_sum_rate},
                 {"pu_sum_rate", r.pu_sum_rate},
                 {"welfare", r.welfare},
                 {"proposals", r.proposals},
                 {"demands", r.demands},
                 {"iterations", r.iterations},
                 {"bits", r.bits},
                 {"verified", r.verified}};
    out << line.dump() << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "axis,value,mechanism,trials";
  for (const char* metric : {"su_sum_rate", "pu_sum_rate", "welfare", "proposals",
                             "demands", "iterations", "bits", "welfare_loss"})
    out << ',' << metric << "_mean," << metric << "_se";
  out << ",verified_fraction\n";
  for (const auto& row : rows) {
    out << row.axis << ',' << format_number(row.value) << ','
        << mechanism_name(row.mechanism) << ',' << row.trials;
    for (const Summary* s : {&row.su_sum_rate, &row.pu_sum_rate, &row.welfare,
                             &row.proposals, &row.demands, &row.iterations, &row.bits})
      write_summary(out, *s);
    if (row.welfare_loss) {
      write_summary(out, *row.welfare_loss);
    } else {
      out << ",,";
    }
    out << ',' << format_number(row.verified_fraction) << '\n';
  }
}

void write_aggregate_jsonl(std::ostream& out, const std::vector<AggregateRow>& rows) {
  for (const auto& row : rows) {
    json line = {{"axis", row.axis},
                 {"value", row.value},
                 {"mechanism", mechanism_name(row.mechanism)},
                 {"trials", row.trials},
                 {"su_sum_rate", summary_json(row.su_sum_rate)},
                 {"pu_sum_rate", summary_json(row.pu_sum_rate)},
                 {"welfare", summary_json(row.welfare)},
                 {"proposals", summary_json(row.proposals)},
                 {"demands", summary_json(row.demands)},
                 {"iterations", summary_json(row.iterations)},
                 {"bits", summary_json(row.bits)},
                 {"verified_fraction", row.verified_fraction}};
    line["welfare_loss"] =
        row.welfare_loss ? summary_json(*row.welfare_loss) : json(nullptr);
    out << line.dump() << '\n';
  }
}

void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& points) {
  out << "bound,lambda,su_sum_rate,pu_sum_rate\n";
  for (const auto& p : points) {
    out << p.bound << ',' << format_number(p.lambda) << ','
        << format_number(p.su_sum_rate) << ',' << format_number(p.pu_sum_rate) << '\n';
  }
}

void write_region_jsonl(std::ostream& out, const std::vector<RegionPoint>& points) {
  for (const auto& p : points) {
    out << json{{"bound", p.bound},
                {"lambda", p.lambda},
                {"su_sum_rate", p.su_sum_rate},
                {"pu_sum_rate", p.pu_sum_rate}}
               .dump()
        << '\n';
  }
}

std::string matching_record_json(int trial, const Matching& matching,
                                 const MessageLog& log) {
  return json{{"trial", trial},
              {"assignment", matching_json(matching)},
              {"proposals_per_su", log.proposals_per_su},
              {"bits_total", log.bits_total}}
      .dump();
}

std::string walras_outcome_json(const WalrasOutcome& outcome) {
  return outcome_json(outcome).dump();
}

std::string auction_trace_json(const std::vector<AuctionState>& history,
                               int num_channels) {
  return trace_json(history, num_channels).dump();
}

std::string trial_detail_json(const TrialDetail& detail) {
  json line = {{"trial", detail.trial},
               {"mechanism", mechanism_name(detail.mechanism)},
               {"assignment", matching_json(detail.matching)}};
  if (detail.log != nullptr) {
    line["proposals_per_su"] = detail.log->proposals_per_su;
    line["bits_total"] = detail.log->bits_total;
  }
  if (detail.auction != nullptr) {
    line["outcome"] = outcome_json(detail.auction->outcome);
    line["iterations"] = detail.auction->iterations;
    if (!detail.auction->history.empty())
      line["trace"] = trace_json(detail.auction->history, detail.matching.num_channels());
  }
  return line.dump();
}

}  // namespace cogmarket
