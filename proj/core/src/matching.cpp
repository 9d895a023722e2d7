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

#include "cogmarket/matching.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cogmarket/rng.hpp"

namespace cogmarket {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_dimensions(const UtilityTables& tables, std::span<const int> quotas) {
  const auto num_sus = tables.u_su.rows();
  const auto num_channels = tables.u_su.cols();
  if (num_sus == 0 || num_channels == 0)
    throw std::invalid_argument("utility tables are empty");
  if (tables.u_pu.rows() != num_channels || tables.u_pu.cols() != num_sus ||
      tables.u_pu_self.size() != num_channels ||
      tables.u_pu_free.size() != num_channels)
    throw std::invalid_argument("utility tables have inconsistent dimensions");
  if (quotas.size() != num_sus)
    throw std::invalid_argument("one quota per SU required");
  for (int q : quotas)
    if (q < 1) throw std::invalid_argument("quotas must be >= 1");
}

void check_matching(const Matching& m, const UtilityTables& tables) {
  if (m.num_sus() != tables.num_sus() || m.num_channels() != tables.num_channels())
    throw std::invalid_argument("matching does not fit the utility tables");
  if (!m.is_consistent()) throw std::invalid_argument("matching is inconsistent");
}

double pu_value(const UtilityTables& t, ChannelIndex l, SuIndex k) {
  return t.u_pu(idx(l), idx(k));
}
double su_value(const UtilityTables& t, SuIndex k, ChannelIndex l) {
  return t.u_su(idx(k), idx(l));
}

// PU l would accept SU k over staying alone.
bool meets_qos(const UtilityTables& t, ChannelIndex l, SuIndex k) {
  return pu_value(t, l, k) > t.u_pu_self[idx(l)];
}

// Coordinator-side bookkeeping for one protocol run.
class Coordinator {
 public:
  Coordinator(const UtilityTables& tables, std::span<const int> quotas)
      : tables_(tables),
        quotas_(quotas),
        num_sus_(tables.num_sus()),
        num_channels_(tables.num_channels()),
        matching_(Matching::unmatched(num_sus_, num_channels_)),
        proposed_(idx(num_sus_), idx(num_channels_), 0),
        blocked_(idx(num_sus_), idx(num_channels_), 0) {
    log_.proposals_per_su.assign(idx(num_sus_), 0);
    log_.bits_per_su.assign(idx(num_sus_), 0);
  }

  // The channel SU k would propose to next, or -1 if k is done (full, or no
  // remaining channel with positive rate).
  ChannelIndex next_proposal(SuIndex k) const {
    if (static_cast<int>(matching_.channels_of[idx(k)].size()) >= quotas_[idx(k)])
      return -1;
    ChannelIndex best = -1;
    for (ChannelIndex l = 0; l < num_channels_; ++l) {
      if (proposed_(idx(k), idx(l)) || blocked_(idx(k), idx(l))) continue;
      if (!(su_value(tables_, k, l) > 0.0)) continue;
      if (best < 0 || su_prefers(tables_, k, l, best)) best = l;
    }
    return best;
  }

  void handle_proposal(SuIndex k, ChannelIndex l) {
    proposed_(idx(k), idx(l)) = 1;
    ++log_.proposals_per_su[idx(k)];
    charge(k, proposal_bits(l + 1) + 1);  // index message + accept/reject bit

    const SuIndex holder = matching_.channel_of[idx(l)];
    const bool accept = meets_qos(tables_, l, k) &&
                        (holder == kSelfMatched || pu_prefers(tables_, l, k, holder));
    if (accept) {
      if (holder != kSelfMatched) matching_.release(l);
      matching_.assign(k, l);
    } else {
      blocked_(idx(k), idx(l)) = 1;  // the reject bit already told k
    }
    log_.proposals.push_back({k, l, accept});

    // Lines 9-10: nobody ranked below the current holder (or failing QoS)
    // can win l any more; tell each newly excluded SU with an L-bit mask.
    const SuIndex reference = matching_.channel_of[idx(l)];
    for (SuIndex i = 0; i < num_sus_; ++i) {
      if (i == reference || blocked_(idx(i), idx(l))) continue;
      const bool excluded =
          !meets_qos(tables_, l, i) ||
          (reference != kSelfMatched && pu_prefers(tables_, l, reference, i));
      if (!excluded) continue;
      blocked_(idx(i), idx(l)) = 1;
      ChannelSet mask;
      for (ChannelIndex j = 0; j < num_channels_; ++j)
        if (blocked_(idx(i), idx(j))) mask.push_back(j);
      log_.disqualifications.push_back({log_.proposals.size() - 1, i, std::move(mask)});
      charge(i, num_channels_);
    }
  }

  StableMatchingResult finish() && { return {std::move(matching_), std::move(log_)}; }

 private:
  void charge(SuIndex k, long bits) {
    log_.bits_per_su[idx(k)] += bits;
    log_.bits_total += bits;
  }

  const UtilityTables& tables_;
  std::span<const int> quotas_;
  int num_sus_;
  int num_channels_;
  Matching matching_;
  MessageLog log_;
  Matrix<char> proposed_;
  Matrix<char> blocked_;
};

}  // namespace

Matching Matching::unmatched(int num_sus, int num_channels) {
  return Matching{std::vector<SuIndex>(idx(num_channels), kSelfMatched),
                  std::vector<ChannelSet>(idx(num_sus))};
}

void Matching::assign(SuIndex k, ChannelIndex l) {
  if (channel_of.at(idx(l)) != kSelfMatched)
    throw std::logic_error("channel already assigned");
  channel_of[idx(l)] = k;
  auto& set = channels_of.at(idx(k));
  set.insert(std::lower_bound(set.begin(), set.end(), l), l);
}

void Matching::release(ChannelIndex l) {
  const SuIndex k = channel_of.at(idx(l));
  if (k == kSelfMatched) return;
  auto& set = channels_of[idx(k)];
  set.erase(std::lower_bound(set.begin(), set.end(), l));
  channel_of[idx(l)] = kSelfMatched;
}

int Matching::assigned_count() const {
  return static_cast<int>(std::count_if(channel_of.begin(), channel_of.end(),
                                        [](SuIndex k) { return k != kSelfMatched; }));
}

bool Matching::is_consistent() const {
  const int num_channels_total = num_channels();
  for (ChannelIndex l = 0; l < num_channels_total; ++l) {
    const SuIndex k = channel_of[idx(l)];
    if (k == kSelfMatched) continue;
    if (k < 0 || k >= num_sus() || !contains(channels_of[idx(k)], l)) return false;
  }
  for (SuIndex k = 0; k < num_sus(); ++k) {
    const auto& set = channels_of[idx(k)];
    if (!std::is_sorted(set.begin(), set.end()) ||
        std::adjacent_find(set.begin(), set.end()) != set.end())
      return false;
    for (ChannelIndex l : set) {
      if (l < 0 || l >= num_channels_total || channel_of[idx(l)] != k) return false;
    }
  }
  return true;
}

bool Matching::respects_quotas(std::span<const int> quotas) const {
  if (quotas.size() != channels_of.size()) return false;
  for (std::size_t k = 0; k < channels_of.size(); ++k)
    if (static_cast<int>(channels_of[k].size()) > quotas[k]) return false;
  return true;
}

bool su_prefers(const UtilityTables& tables, SuIndex k, ChannelIndex a,
                ChannelIndex b) {
  const double va = su_value(tables, k, a);
  const double vb = su_value(tables, k, b);
  return va > vb || (va == vb && a < b);
}

bool pu_prefers(const UtilityTables& tables, ChannelIndex l, SuIndex a,
                SuIndex b) {
  const double va = pu_value(tables, l, a);
  const double vb = pu_value(tables, l, b);
  return va > vb || (va == vb && a < b);
}

StableMatchingResult run_stable_matching(const UtilityTables& tables,
                                         std::span<const int> quotas,
                                         const MatchingOptions& options) {
  check_dimensions(tables, quotas);
  const int num_sus = tables.num_sus();
  Coordinator coordinator(tables, quotas);

  if (options.order == ProposalOrder::kRoundRobin) {
    // One proposal per turn; stop after a full idle pass.
    int idle = 0;
    for (SuIndex k = 0; idle < num_sus; k = (k + 1) % num_sus) {
      const ChannelIndex l = coordinator.next_proposal(k);
      if (l < 0) {
        ++idle;
        continue;
      }
      idle = 0;
      coordinator.handle_proposal(k, l);
    }
  } else {
    Rng rng(options.order_seed);
    std::vector<std::pair<SuIndex, ChannelIndex>> ready;
    for (;;) {
      ready.clear();
      for (SuIndex k = 0; k < num_sus; ++k) {
        const ChannelIndex l = coordinator.next_proposal(k);
        if (l >= 0) ready.emplace_back(k, l);
      }
      if (ready.empty()) break;
      const auto& [k, l] = ready[rng.below(ready.size())];
      coordinator.handle_proposal(k, l);
    }
  }
  return std::move(coordinator).finish();
}

bool is_individually_rational(const Matching& m, const UtilityTables& tables) {
  check_matching(m, tables);
  for (ChannelIndex l = 0; l < m.num_channels(); ++l) {
    const SuIndex k = m.channel_of[idx(l)];
    if (k != kSelfMatched && tables.u_pu_self[idx(l)] > pu_value(tables, l, k))
      return false;
  }
  for (SuIndex k = 0; k < m.num_sus(); ++k) {
    for (ChannelIndex j : m.channels_of[idx(k)])
      if (0.0 > su_value(tables, k, j)) return false;
  }
  return true;
}

std::vector<std::pair<SuIndex, ChannelIndex>> find_blocking_pairs(
    const Matching& m, const UtilityTables& tables,
    std::span<const int> quotas) {
  check_matching(m, tables);
  if (quotas.size() != idx(m.num_sus()))
    throw std::invalid_argument("one quota per SU required");
  std::vector<std::pair<SuIndex, ChannelIndex>> blocking;
  for (SuIndex k = 0; k < m.num_sus(); ++k) {
    const auto& held = m.channels_of[idx(k)];
    for (ChannelIndex l = 0; l < m.num_channels(); ++l) {
      if (contains(held, l)) continue;
      const SuIndex current = m.channel_of[idx(l)];
      const bool pu_wants = current == kSelfMatched
                                ? meets_qos(tables, l, k)
                                : pu_prefers(tables, l, k, current);
      if (!pu_wants) continue;
      bool su_wants = static_cast<int>(held.size()) < quotas[idx(k)] &&
                      su_value(tables, k, l) > 0.0;
      for (ChannelIndex other : held) {
        if (su_wants) break;
        su_wants = su_prefers(tables, k, l, other);
      }
      if (su_wants) blocking.emplace_back(k, l);
    }
  }
  return blocking;
}

bool is_stable(const Matching& m, const UtilityTables& tables,
               std::span<const int> quotas) {
  return is_individually_rational(m, tables) &&
         find_blocking_pairs(m, tables, quotas).empty();
}

int proposal_bits(int one_based_channel) {
  if (one_based_channel < 1) throw std::invalid_argument("channel index must be >= 1");
  return static_cast<int>(std::bit_width(static_cast<unsigned>(one_based_channel - 1)));
}

long worst_case_bits(int num_channels) {
  if (num_channels < 1) throw std::invalid_argument("L must be >= 1");
  const long l = num_channels;
  long index_bits = 0;
  for (int i = 1; i <= num_channels; ++i) index_bits += proposal_bits(i);
  return l * l + l + index_bits;
}

bool verify_unique_pu_optimal(const Matching& m, const UtilityTables& tables,
                              std::span<const int> quotas) {
  check_matching(m, tables);
  if (quotas.size() != idx(m.num_sus()))
    throw std::invalid_argument("one quota per SU required");
  for (int q : quotas) {
    if (q < m.num_channels())
      throw std::invalid_argument("uniqueness check requires every quota >= L");
  }
  for (ChannelIndex l = 0; l < m.num_channels(); ++l) {
    SuIndex best = kSelfMatched;
    for (SuIndex k = 0; k < m.num_sus(); ++k) {
      if (!(su_value(tables, k, l) > 0.0) || !meets_qos(tables, l, k)) continue;
      if (best == kSelfMatched || pu_prefers(tables, l, k, best)) best = k;
    }
    if (m.channel_of[idx(l)] != best) return false;
  }
  return true;
}

}  // namespace cogmarket
