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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "accord/market.hpp"

namespace accord {

/// The full demand correspondence of one agent at one price vector: every
/// utility-maximizing subset of her contract set, in canonical order, plus
/// the optimum (her indirect utility).
struct DemandReport {
  int agent = -1;
  std::vector<Mask> demand_sets;  // global masks, canonical order, nonempty
  std::int64_t optimum = 0;
};

/// Exhaustive enumeration of all 2^|contracts| bundles of the agent.
/// `agent_prices` is aligned with instance.agent_contracts(agent). Throws
/// InputError when the agent's contract count exceeds `max_contracts`.
DemandReport demand(const MarketInstance& instance, int agent,
                    std::span<const std::int64_t> agent_prices,
                    int max_contracts = kMaxContractsPerAgent);
DemandReport demand(const MarketInstance& instance, int agent, const PriceVector& prices,
                    int max_contracts = kMaxContractsPerAgent);

/// One report per agent, in agent order.
std::vector<DemandReport> demand_all(const MarketInstance& instance, const PriceVector& prices,
                                     int max_contracts = kMaxContractsPerAgent);

/// Union and intersection over all demand sets. Under gross complements the
/// union is the agent's largest demand set and the intersection her
/// smallest.
std::pair<Mask, Mask> largest_and_smallest(const DemandReport& report);

/// Union of the demand sets contained in `allowed`, or nullopt when no
/// demand set qualifies.
std::optional<Mask> try_confined_largest(const DemandReport& report, Mask allowed);

/// Throwing variant: an empty confinement signals that the reports cannot
/// have come from a gross-complements agent, so this raises GcViolation.
Mask confined_largest(const DemandReport& report, Mask allowed);

/// Intersection of the demand sets containing `contract`; the complements
/// of the anchor. Throws InputError when the anchor is in no demand set.
Mask anchored_intersection(const DemandReport& report, int contract);

/// Indirect utility of one agent: the optimum without the argmax list.
std::int64_t indirect_utility(const MarketInstance& instance, int agent,
                              std::span<const std::int64_t> agent_prices,
                              int max_contracts = kMaxContractsPerAgent);

/// Sum of all agents' indirect utilities at a balanced price vector. The
/// auction drives this potential down to the maximum aggregate valuation.
std::int64_t lyapunov(const MarketInstance& instance, const PriceVector& prices,
                      int max_contracts = kMaxContractsPerAgent);

}  // namespace accord
