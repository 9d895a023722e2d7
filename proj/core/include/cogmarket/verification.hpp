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

#ifndef COGMARKET_VERIFICATION_HPP_
#define COGMARKET_VERIFICATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace cogmarket {

struct InvariantResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  // Diagnostics are reported but do not decide all_passed().
  bool gating = true;
  bool passed() const { return cases > 0 && failures == 0; }
};

struct VerificationReport {
  std::vector<InvariantResult> results;
  bool all_passed() const;
};

struct VerificationOptions {
  std::uint64_t seed = 7;
  int instances = 200;
};

// Randomized self-check of every mechanism against a brute-force
// counterpart. One result per invariant.
VerificationReport run_invariant_suite(const VerificationOptions& options = {});

}  // namespace cogmarket

#endif  // COGMARKET_VERIFICATION_HPP_
