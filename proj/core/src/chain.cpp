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

#include "accord/chain.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "accord/errors.hpp"

namespace accord {

namespace {

std::optional<Mask> try_anchored(const DemandReport& report, int contract) {
  Mask common = ~Mask{0};
  bool any = false;
  for (Mask s : report.demand_sets) {
    if (contains(s, contract)) {
      common &= s;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return common;
}

class ChainSearch {
 public:
  ChainSearch(const VerificationTrace& trace, std::span<const DemandReport> reports,
              const MarketInstance& instance, const std::vector<char>& excluded)
      : trace_(trace), reports_(reports), instance_(instance), excluded_(excluded) {
    const int s = trace.terminal_level();
    agents_.assign(static_cast<std::size_t>(s) + 1, -1);
    contracts_.assign(static_cast<std::size_t>(s), -1);
  }

  std::optional<ComplementsChain> run() {
    const int s = trace_.terminal_level();
    for (int w : members(g(s) & trace_.strongly_demanded)) {
      contracts_[static_cast<std::size_t>(s) - 1] = w;
      for (int a = 0; a < instance_.agent_count(); ++a) {
        if (excluded(a)) continue;
        if (!contains(largest_and_smallest(reports_[static_cast<std::size_t>(a)]).second, w)) {
          continue;
        }
        if (!contains(dbar(s, a), w)) continue;
        agents_[static_cast<std::size_t>(s)] = a;
        if (pick_left_agent(s)) {
          return ComplementsChain{agents_, contracts_};
        }
      }
    }
    return std::nullopt;
  }

 private:
  Mask g(int level) const {
    return trace_.levels[static_cast<std::size_t>(level) - 1].partially_agreeable;
  }
  Mask dbar(int level, int agent) const {
    return trace_.levels[static_cast<std::size_t>(level) - 1]
        .confined[static_cast<std::size_t>(agent)];
  }
  bool excluded(int agent) const {
    return static_cast<std::size_t>(agent) < excluded_.size() &&
           excluded_[static_cast<std::size_t>(agent)] != 0;
  }

  // Chooses the agent to the left of the level-`level` contract, then works
  // down one level; backtracks over all candidates.
  bool pick_left_agent(int level) {
    const int w = contracts_[static_cast<std::size_t>(level) - 1];
    auto order = std::vector<int>(instance_.participants(w).begin(),
                                  instance_.participants(w).end());
    std::sort(order.begin(), order.end());
    for (int a : order) {
      if (excluded(a)) continue;
      if (contains(dbar(level, a), w)) continue;
      agents_[static_cast<std::size_t>(level) - 1] = a;
      if (level == 1) return true;
      const auto anchored = try_anchored(reports_[static_cast<std::size_t>(a)], w);
      if (!anchored) continue;
      const Mask candidates = g(level - 1) & *anchored & dbar(level - 1, a);
      for (int prev : members(candidates)) {
        contracts_[static_cast<std::size_t>(level) - 2] = prev;
        if (pick_left_agent(level - 1)) return true;
      }
    }
    return false;
  }

  const VerificationTrace& trace_;
  std::span<const DemandReport> reports_;
  const MarketInstance& instance_;
  const std::vector<char>& excluded_;
  std::vector<int> agents_;
  std::vector<int> contracts_;
};

}  // namespace

std::optional<ComplementsChain> find_chain(const VerificationTrace& trace,
                                           std::span<const DemandReport> reports,
                                           const MarketInstance& instance,
                                           const std::vector<char>& excluded_agents) {
  if (trace.verdict != Verdict::kNonEquilibrium) {
    throw std::logic_error("find_chain called on an equilibrium trace");
  }
  auto chain = ChainSearch(trace, reports, instance, excluded_agents).run();
  if (chain) validate_chain(*chain, trace, reports, instance);
  return chain;
}

std::vector<ComplementsChain> find_disjoint_chains(const VerificationTrace& trace,
                                                   std::span<const DemandReport> reports,
                                                   const MarketInstance& instance) {
  std::vector<char> excluded(static_cast<std::size_t>(instance.agent_count()), 0);
  std::vector<ComplementsChain> chains;
  while (auto chain = find_chain(trace, reports, instance, excluded)) {
    for (int a : chain->agents) excluded[static_cast<std::size_t>(a)] = 1;
    chains.push_back(std::move(*chain));
  }
  if (chains.empty()) {
    throw GcViolation(
        "no complements chain exists at a non-equilibrium price vector; reports violate gross "
        "complementarity");
  }
  return chains;
}

void validate_chain(const ComplementsChain& chain, const VerificationTrace& trace,
                    std::span<const DemandReport> reports, const MarketInstance& instance) {
  const int s = chain.length();
  auto fail = [&](const std::string& what) {
    throw std::logic_error("invalid complements chain: " + what);
  };
  if (s < 1) fail("no contracts");
  if (static_cast<int>(chain.agents.size()) != s + 1) fail("agent/contract counts disagree");
  if (s != trace.terminal_level()) fail("length differs from the terminal level");

  for (int l = 1; l <= s; ++l) {
    const int w = chain.contracts[static_cast<std::size_t>(l) - 1];
    const int left = chain.agents[static_cast<std::size_t>(l) - 1];
    const int right = chain.agents[static_cast<std::size_t>(l)];
    const auto& level = trace.levels[static_cast<std::size_t>(l) - 1];
    if (left == right) fail("adjacent agents coincide");
    if (!instance.participates(left, w) || !instance.participates(right, w)) {
      fail("agent outside the contract's participants");
    }
    if (!contains(level.partially_agreeable, w)) {
      fail("contract " + instance.contract_id(w) + " is not level-" + std::to_string(l) +
           " partially agreeable");
    }
    if (contains(level.confined[static_cast<std::size_t>(left)], w)) {
      fail("left agent demands the contract at its level");
    }
    if (!contains(level.confined[static_cast<std::size_t>(right)], w)) {
      fail("right agent does not demand the contract at its level");
    }
    for (int k = l + 1; k <= s; ++k) {
      if (chain.contracts[static_cast<std::size_t>(k) - 1] == w) fail("contract repeats");
    }
  }

  const int last_contract = chain.contracts[static_cast<std::size_t>(s) - 1];
  if (!contains(trace.strongly_demanded, last_contract)) {
    fail("final contract is not strongly demanded");
  }
  const auto& last_report = reports[static_cast<std::size_t>(chain.last_agent())];
  if (!contains(largest_and_smallest(last_report).second, last_contract)) {
    fail("final agent does not strongly demand the final contract");
  }

  for (int l = 2; l <= s; ++l) {
    const int w = chain.contracts[static_cast<std::size_t>(l) - 1];
    const int prev = chain.contracts[static_cast<std::size_t>(l) - 2];
    const int between = chain.agents[static_cast<std::size_t>(l) - 1];
    const auto anchored = try_anchored(reports[static_cast<std::size_t>(between)], w);
    if (!anchored || !contains(*anchored, prev)) {
      fail("contract " + instance.contract_id(prev) + " is not a complement of " +
           instance.contract_id(w) + " for agent " + instance.agent_id(between));
    }
  }
}

}  // namespace accord
