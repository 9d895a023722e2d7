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

#include <benchmark/benchmark.h>

#include <vector>

#include "cogmarket/assignment.hpp"
#include "cogmarket/channel_model.hpp"
#include "cogmarket/market.hpp"
#include "cogmarket/matching.hpp"

namespace {

using namespace cogmarket;

ScenarioConfig config(int num_sus, int num_channels, int quota) {
  ScenarioConfig c;
  c.num_sus = num_sus;
  c.num_channels = num_channels;
  c.quotas = {quota};
  return c;
}

std::vector<UtilityTables> instances(const ScenarioConfig& c, int count) {
  std::vector<UtilityTables> out;
  for (int t = 0; t < count; ++t)
    out.push_back(build_utility_tables(generate_realization(c, static_cast<std::uint64_t>(t)), c));
  return out;
}

void BM_BuildTables(benchmark::State& state) {
  const ScenarioConfig c = config(10, 20, 2);
  std::uint64_t trial = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_utility_tables(generate_realization(c, trial++), c));
}
BENCHMARK(BM_BuildTables);

void BM_StableMatching(benchmark::State& state) {
  const ScenarioConfig c = config(10, 20, static_cast<int>(state.range(0)));
  const auto tables = instances(c, 64);
  const auto quotas = c.quota_vector();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_stable_matching(tables[i++ % 64], quotas));
}
BENCHMARK(BM_StableMatching)->Arg(1)->Arg(2)->Arg(8);

void BM_EnglishAuction(benchmark::State& state) {
  const ScenarioConfig c = config(10, 10, 1);
  std::vector<Valuation> vals;
  for (const auto& t : instances(c, 16)) vals.push_back(make_valuation(t, 0.5, c.quota_vector()));
  AuctionOptions o;
  o.alpha = 1.0 / static_cast<double>(state.range(0));
  o.initial_price = o.alpha / 2;
  o.record_history = false;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_english_auction(vals[i++ % 16], o));
}
BENCHMARK(BM_EnglishAuction)->Arg(20)->Arg(100)->Arg(1000);

void BM_Hungarian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScenarioConfig c = config(n / 2, n, 2);
  const auto v = make_valuation(instances(c, 1)[0], 0.5, c.quota_vector());
  for (auto _ : state) benchmark::DoNotOptimize(hungarian_assign(v));
}
BENCHMARK(BM_Hungarian)->Arg(20)->Arg(40)->Arg(80);

void BM_Demand(benchmark::State& state) {
  const ScenarioConfig c = config(1, static_cast<int>(state.range(0)), 3);
  const auto v = make_valuation(instances(c, 1)[0], 0.5, c.quota_vector());
  const PriceVector p(static_cast<std::size_t>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_demand(v, 0, p));
}
BENCHMARK(BM_Demand)->Arg(10)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
