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

#include "accord/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "accord/errors.hpp"
#include "accord/random.hpp"

namespace accord {

namespace {

// First k entries of a seeded partial shuffle of 0..n-1.
std::vector<int> pick_distinct(SplitMix64& rng, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace

MarketInstance generate(const GenParams& params) {
  if (params.agents < 2 || params.max_participants < 2) {
    throw InputError("impossible participant constraints: contracts need at least 2 participants");
  }
  if (params.contracts < 0) throw InputError("contract count must be nonnegative");
  if (params.value_lo > params.value_hi) throw InputError("empty value range");
  if (params.synergy_density < 0.0 || params.synergy_density > 1.0) {
    throw InputError("synergy density must lie in [0, 1]");
  }

  SplitMix64 rng(params.seed);
  MarketInstance::Builder builder;

  std::vector<std::string> agent_ids;
  for (int a = 0; a < params.agents; ++a) {
    agent_ids.push_back("a" + std::to_string(a + 1));
    builder.agent(agent_ids.back());
  }

  std::vector<std::vector<int>> contracts_of(static_cast<std::size_t>(params.agents));
  std::vector<std::string> contract_ids;
  for (int c = 0; c < params.contracts; ++c) {
    contract_ids.push_back("w" + std::to_string(c + 1));
    const int cap = std::min(params.max_participants, params.agents);
    const int count = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap - 1)));
    auto chosen = pick_distinct(rng, params.agents, count);
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::string> ids;
    for (int a : chosen) {
      ids.push_back(agent_ids[static_cast<std::size_t>(a)]);
      contracts_of[static_cast<std::size_t>(a)].push_back(c);
    }
    builder.contract(contract_ids.back(), std::move(ids));
  }

  const std::int64_t bonus_hi = std::max<std::int64_t>(params.value_hi, 0);
  for (int a = 0; a < params.agents; ++a) {
    const auto& own = contracts_of[static_cast<std::size_t>(a)];
    const int m = static_cast<int>(own.size());
    if (m > kMaxContractsPerAgent) {
      throw InputError("generated agent would exceed the per-agent contract cap");
    }

    std::vector<std::pair<std::string, std::int64_t>> additive;
    for (int c : own) {
      additive.emplace_back(contract_ids[static_cast<std::size_t>(c)],
                            rng.range(params.value_lo, params.value_hi));
    }

    std::vector<MarketInstance::Builder::BonusSpec> bonuses;
    const auto pair_count = static_cast<double>(m) * (m - 1) / 2.0;
    const auto bonus_count = static_cast<int>(std::llround(params.synergy_density * pair_count));
    for (int b = 0; b < bonus_count; ++b) {
      const int size = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
      auto chosen = pick_distinct(rng, m, size);
      std::sort(chosen.begin(), chosen.end());
      MarketInstance::Builder::BonusSpec spec;
      for (int k : chosen) {
        spec.set.push_back(contract_ids[static_cast<std::size_t>(own[static_cast<std::size_t>(k)])]);
      }
      spec.value = rng.range(0, bonus_hi);
      bonuses.push_back(std::move(spec));
    }
    builder.synergy(agent_ids[static_cast<std::size_t>(a)], std::move(additive),
                    std::move(bonuses));
  }

  return builder.build();
}

}  // namespace accord
