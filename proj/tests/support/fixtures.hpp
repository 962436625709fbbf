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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "accord/demand.hpp"
#include "accord/io.hpp"
#include "accord/market.hpp"
#include "accord/random.hpp"

namespace accord::testing {

// Ana and Bob can sign one contract they value at 2 and 3.
inline MarketInstance fixture_b() {
  return MarketInstance::Builder()
      .agent("Ana")
      .agent("Bob")
      .contract("w", {"Ana", "Bob"})
      .value("Ana", {}, 0)
      .value("Ana", {"w"}, 2)
      .value("Bob", {}, 0)
      .value("Bob", {"w"}, 3)
      .build();
}

// Two agents sharing two contracts, both supermodular, with the aggregate
// maximized at {u, v} with value 7.
inline MarketInstance fixture_c() {
  return MarketInstance::Builder()
      .agent("a1")
      .agent("a2")
      .contract("u", {"a1", "a2"})
      .contract("v", {"a1", "a2"})
      .value("a1", {}, 0)
      .value("a1", {"u"}, 1)
      .value("a1", {"v"}, -1)
      .value("a1", {"u", "v"}, 4)
      .value("a2", {}, 0)
      .value("a2", {"u"}, 2)
      .value("a2", {"v"}, 1)
      .value("a2", {"u", "v"}, 3)
      .build();
}

// The three-agent, five-contract participation structure used by the
// report-level verification fixtures. Valuations are all zero; tests that
// use this shape work from reported demand sets, not valuations.
inline MarketInstance fixture_a_instance() {
  MarketInstance::Builder builder;
  builder.agent("i1").agent("i2").agent("i3");
  builder.contract("w1", {"i1", "i2"});
  builder.contract("w2", {"i1", "i3"});
  builder.contract("w3", {"i1", "i3"});
  builder.contract("w4", {"i1", "i2"});
  builder.contract("w5", {"i1", "i2"});
  for (const char* agent : {"i1", "i2", "i3"}) {
    builder.synergy(agent, {}, {});
  }
  return builder.build();
}

inline std::vector<DemandReport> fixture_a_reports(const MarketInstance& instance) {
  return io::parse_reports(R"({"reports": {
    "i1": [["w1", "w2"], ["w1", "w2", "w3", "w4"]],
    "i2": [["w1"], ["w1", "w4", "w5"]],
    "i3": [[], ["w2", "w3"]]
  }})",
                           instance);
}

// Two agent-disjoint copies of the Ana/Bob market in one instance.
inline MarketInstance fixture_b_twice() {
  return MarketInstance::Builder()
      .agent("Ana")
      .agent("Bob")
      .agent("Cara")
      .agent("Dan")
      .contract("w", {"Ana", "Bob"})
      .contract("y", {"Cara", "Dan"})
      .value("Ana", {}, 0)
      .value("Ana", {"w"}, 2)
      .value("Bob", {}, 0)
      .value("Bob", {"w"}, 3)
      .value("Cara", {}, 0)
      .value("Cara", {"y"}, 2)
      .value("Dan", {}, 0)
      .value("Dan", {"y"}, 3)
      .build();
}

// A two-contract valuation violating supermodularity: 2 + 2 > 3 + 0.
inline MarketInstance fixture_submodular() {
  return MarketInstance::Builder()
      .agent("a1")
      .agent("a2")
      .contract("u", {"a1", "a2"})
      .contract("v", {"a1", "a2"})
      .value("a1", {}, 0)
      .value("a1", {"u"}, 2)
      .value("a1", {"v"}, 2)
      .value("a1", {"u", "v"}, 3)
      .value("a2", {}, 0)
      .value("a2", {"u"}, 0)
      .value("a2", {"v"}, 0)
      .value("a2", {"u", "v"}, 0)
      .build();
}

struct PriceSpec {
  std::string agent;
  std::string contract;
  std::int64_t value;
};

inline PriceVector make_prices(const MarketInstance& instance,
                               std::initializer_list<PriceSpec> entries) {
  PriceVector prices = PriceVector::zero(instance);
  for (const auto& e : entries) {
    set_price(instance, prices, instance.agent_index(e.agent),
              instance.contract_index(e.contract), e.value);
  }
  return prices;
}

inline Mask mask_of(const MarketInstance& instance, std::vector<std::string> ids) {
  return instance.contract_set(ids);
}

// Balanced integer prices: the first k-1 participants of each contract draw
// from [-bound/(k-1), bound/(k-1)] and the last offsets the sum, keeping
// every coordinate within [-bound, bound].
inline PriceVector random_balanced_prices(const MarketInstance& instance, SplitMix64& rng,
                                          std::int64_t bound) {
  PriceVector prices = PriceVector::zero(instance);
  for (int c = 0; c < instance.contract_count(); ++c) {
    const auto parts = instance.participants(c);
    const auto k = static_cast<std::int64_t>(parts.size());
    const std::int64_t step = bound / (k - 1);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const std::int64_t v = rng.range(-step, step);
      set_price(instance, prices, parts[i], c, v);
      sum += v;
    }
    set_price(instance, prices, parts.back(), c, -sum);
  }
  return prices;
}

// Rebuilds the instance with an explicit table for one agent; used to plant
// supermodularity violations in otherwise generated markets.
inline MarketInstance with_table(const MarketInstance& instance, int agent,
                                 const std::vector<std::int64_t>& table) {
  MarketInstance::Builder builder;
  for (int a = 0; a < instance.agent_count(); ++a) builder.agent(instance.agent_id(a));
  for (int c = 0; c < instance.contract_count(); ++c) {
    std::vector<std::string> parts;
    for (int a : instance.participants(c)) parts.push_back(instance.agent_id(a));
    builder.contract(instance.contract_id(c), std::move(parts));
  }
  for (int a = 0; a < instance.agent_count(); ++a) {
    const auto& source = a == agent ? table : std::vector<std::int64_t>(
                                                  instance.table(a).begin(),
                                                  instance.table(a).end());
    const std::uint32_t size = 1u << instance.agent_contracts(a).size();
    for (std::uint32_t local = 0; local < size; ++local) {
      std::vector<std::string> ids;
      for (int c : members(instance.local_to_global(a, local))) {
        ids.push_back(instance.contract_id(c));
      }
      builder.value(instance.agent_id(a), std::move(ids), source[local]);
    }
  }
  return builder.build();
}

}  // namespace accord::testing
