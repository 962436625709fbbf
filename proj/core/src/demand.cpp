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

#include "accord/demand.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "accord/errors.hpp"

namespace accord {

namespace {

void check_cap(const MarketInstance& instance, int agent, int max_contracts) {
  const int m = static_cast<int>(instance.agent_contracts(agent).size());
  if (m > max_contracts) {
    throw InputError("agent '" + instance.agent_id(agent) + "' has " + std::to_string(m) +
                     " contracts; demand enumeration is capped at " +
                     std::to_string(max_contracts));
  }
}

// Price of every local bundle, built incrementally from the bundle with its
// lowest member removed.
std::vector<std::int64_t> bundle_costs(std::span<const std::int64_t> agent_prices) {
  const std::size_t size = std::size_t{1} << agent_prices.size();
  std::vector<std::int64_t> cost(size, 0);
  for (std::uint32_t local = 1; local < size; ++local) {
    const int low = std::countr_zero(local);
    cost[local] = cost[local & (local - 1)] + agent_prices[static_cast<std::size_t>(low)];
  }
  return cost;
}

}  // namespace

DemandReport demand(const MarketInstance& instance, int agent,
                    std::span<const std::int64_t> agent_prices, int max_contracts) {
  check_cap(instance, agent, max_contracts);
  const auto table = instance.table(agent);
  if (agent_prices.size() != instance.agent_contracts(agent).size()) {
    throw InputError("price vector for agent '" + instance.agent_id(agent) +
                     "' does not cover her contract set");
  }

  const auto cost = bundle_costs(agent_prices);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t local = 0; local < table.size(); ++local) {
    best = std::max(best, table[local] - cost[local]);
  }

  DemandReport report;
  report.agent = agent;
  report.optimum = best;
  for (std::uint32_t local = 0; local < table.size(); ++local) {
    if (table[local] - cost[local] == best) {
      report.demand_sets.push_back(instance.local_to_global(agent, local));
    }
  }
  std::sort(report.demand_sets.begin(), report.demand_sets.end(), canonical_less);
  return report;
}

DemandReport demand(const MarketInstance& instance, int agent, const PriceVector& prices,
                    int max_contracts) {
  return demand(instance, agent, prices.agent(agent), max_contracts);
}

std::vector<DemandReport> demand_all(const MarketInstance& instance, const PriceVector& prices,
                                     int max_contracts) {
  std::vector<DemandReport> reports;
  reports.reserve(static_cast<std::size_t>(instance.agent_count()));
  for (int a = 0; a < instance.agent_count(); ++a) {
    reports.push_back(demand(instance, a, prices, max_contracts));
  }
  return reports;
}

std::pair<Mask, Mask> largest_and_smallest(const DemandReport& report) {
  Mask all = 0;
  Mask common = ~Mask{0};
  for (Mask s : report.demand_sets) {
    all |= s;
    common &= s;
  }
  if (report.demand_sets.empty()) common = 0;
  return {all, common};
}

std::optional<Mask> try_confined_largest(const DemandReport& report, Mask allowed) {
  Mask united = 0;
  bool any = false;
  for (Mask s : report.demand_sets) {
    if (is_subset(s, allowed)) {
      united |= s;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return united;
}

Mask confined_largest(const DemandReport& report, Mask allowed) {
  if (auto c = try_confined_largest(report, allowed)) return *c;
  throw GcViolation("confinement empty: no demand set of agent " + std::to_string(report.agent) +
                    " fits the allowed contract set; reports violate gross complementarity");
}

Mask anchored_intersection(const DemandReport& report, int contract) {
  Mask common = ~Mask{0};
  bool any = false;
  for (Mask s : report.demand_sets) {
    if (contains(s, contract)) {
      common &= s;
      any = true;
    }
  }
  if (!any) throw InputError("anchor not demanded: contract index " + std::to_string(contract));
  return common;
}

std::int64_t indirect_utility(const MarketInstance& instance, int agent,
                              std::span<const std::int64_t> agent_prices, int max_contracts) {
  check_cap(instance, agent, max_contracts);
  const auto table = instance.table(agent);
  const auto cost = bundle_costs(agent_prices);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t local = 0; local < table.size(); ++local) {
    best = std::max(best, table[local] - cost[local]);
  }
  return best;
}

std::int64_t lyapunov(const MarketInstance& instance, const PriceVector& prices,
                      int max_contracts) {
  std::int64_t total = 0;
  for (int a = 0; a < instance.agent_count(); ++a) {
    total += indirect_utility(instance, a, prices.agent(a), max_contracts);
  }
  return total;
}

}  // namespace accord
