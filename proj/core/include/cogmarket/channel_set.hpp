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

#ifndef COGMARKET_CHANNEL_SET_HPP_
#define COGMARKET_CHANNEL_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace cogmarket {

using SuIndex = int;
using ChannelIndex = int;

// Sorted, duplicate-free list of 0-based channel indices.
using ChannelSet = std::vector<ChannelIndex>;

inline bool contains(const ChannelSet& set, ChannelIndex l) {
  return std::binary_search(set.begin(), set.end(), l);
}

inline ChannelSet intersection(const ChannelSet& a, const ChannelSet& b) {
  ChannelSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool is_subset(const ChannelSet& sub, const ChannelSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// Enumeration helpers for exhaustive checks (num_channels <= 63).
inline ChannelSet set_from_mask(std::uint64_t mask, int num_channels) {
  ChannelSet out;
  for (int l = 0; l < num_channels; ++l) {
    if (mask & (std::uint64_t{1} << l)) out.push_back(l);
  }
  return out;
}

inline std::uint64_t mask_from_set(const ChannelSet& set) {
  std::uint64_t mask = 0;
  for (ChannelIndex l : set) mask |= std::uint64_t{1} << l;
  return mask;
}

// The L-bit demand/disqualification message: character l is '1' iff l is in
// the set.
inline std::string bit_string(const ChannelSet& set, int num_channels) {
  std::string bits(static_cast<std::size_t>(num_channels), '0');
  for (ChannelIndex l : set) bits[static_cast<std::size_t>(l)] = '1';
  return bits;
}

}  // namespace cogmarket

#endif  // COGMARKET_CHANNEL_SET_HPP_
