// Copyright 2026 The Accord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "accord/auction.hpp"
#include "accord/generator.hpp"
#include "accord/oracles.hpp"
#include "accord/random.hpp"

namespace {

using namespace accord;

MarketInstance bench_instance(int agents, int contracts) {
  return generate({.agents = agents,
                   .contracts = contracts,
                   .max_participants = 3,
                   .value_lo = -10,
                   .value_hi = 10,
                   .synergy_density = 0.4,
                   .seed = 7});
}

PriceVector bench_prices(const MarketInstance& inst, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PriceVector prices = PriceVector::zero(inst);
  for (int c = 0; c < inst.contract_count(); ++c) {
    const auto parts = inst.participants(c);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const std::int64_t v = rng.range(-5, 5);
      set_price(inst, prices, parts[i], c, v);
      sum += v;
    }
    set_price(inst, prices, parts.back(), c, -sum);
  }
  return prices;
}

void BM_DemandEnumeration(benchmark::State& state) {
  const int contracts = static_cast<int>(state.range(0));
  const auto inst = generate({.agents = 2,
                              .contracts = contracts,
                              .max_participants = 2,
                              .synergy_density = 0.2,
                              .seed = 11});
  const auto prices = bench_prices(inst, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(demand(inst, 0, prices));
  }
}
BENCHMARK(BM_DemandEnumeration)->Arg(8)->Arg(12)->Arg(16);

void BM_Verify(benchmark::State& state) {
  const auto inst = bench_instance(4, static_cast<int>(state.range(0)));
  const auto prices = bench_prices(inst, 5);
  const auto reports = demand_all(inst, prices);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify(reports, inst));
  }
}
BENCHMARK(BM_Verify)->Arg(6)->Arg(10);

void BM_RunAuction(benchmark::State& state) {
  const auto inst = bench_instance(4, static_cast<int>(state.range(0)));
  const auto initial = bench_prices(inst, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_auction(inst, initial));
  }
}
BENCHMARK(BM_RunAuction)->Arg(5)->Arg(8);

void BM_EfficientSetsOracle(benchmark::State& state) {
  const auto inst = bench_instance(4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracles::efficient_sets(inst));
  }
}
BENCHMARK(BM_EfficientSetsOracle)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
