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

#ifndef COGMARKET_RNG_HPP_
#define COGMARKET_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace cogmarket {

// Named substreams drawn from one trial. Each (seed, trial, stream) triple is
// an independent generator, so trials can run in any order.
enum class Stream : std::uint64_t {
  kChannel = 0,
  kRandomMatching = 1,
  kScheduling = 2,
  kVerification = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial,
                                 Stream stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial);
  return splitmix64(h ^ static_cast<std::uint64_t>(stream));
}

// Thin wrapper over mt19937_64 with conversions written out explicitly so
// the draw sequence does not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t trial, Stream stream)
      : engine_(derive_seed(seed, trial, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exp(1); equals |CN(0,1)|^2 in distribution.
  double exponential() { return -std::log1p(-uniform()); }

  // Uniform integer in [0, n), n > 0, rejection-sampled to avoid bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const std::uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cogmarket

#endif  // COGMARKET_RNG_HPP_
