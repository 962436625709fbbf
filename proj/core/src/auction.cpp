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

#include "accord/auction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "accord/errors.hpp"
#include "accord/oracles.hpp"

namespace accord {

namespace {

VerificationSummary summarize(const VerificationTrace& trace) {
  VerificationSummary s;
  s.verdict = trace.verdict;
  s.terminal_level = trace.terminal_level();
  s.strongly_demanded = trace.strongly_demanded;
  for (const auto& level : trace.levels) {
    s.partially_agreeable.push_back(level.partially_agreeable);
  }
  s.support = trace.support;
  s.witness = trace.witness;
  return s;
}

}  // namespace

PriceVector adjust_prices(const MarketInstance& instance, const PriceVector& prices,
                          std::span<const ComplementsChain> chains) {
  if (!prices.shape_matches(instance)) {
    throw InputError("price vector does not match the instance's participation structure");
  }
  std::vector<char> used(static_cast<std::size_t>(instance.agent_count()), 0);
  for (const auto& chain : chains) {
    std::vector<char> own(static_cast<std::size_t>(instance.agent_count()), 0);
    for (int a : chain.agents) {
      if (a < 0 || a >= instance.agent_count()) throw InputError("chain agent out of range");
      if (used[static_cast<std::size_t>(a)]) {
        throw InputError("chains share agent '" + instance.agent_id(a) + "'");
      }
      own[static_cast<std::size_t>(a)] = 1;
    }
    for (int a = 0; a < instance.agent_count(); ++a) {
      if (own[static_cast<std::size_t>(a)]) used[static_cast<std::size_t>(a)] = 1;
    }
  }

  PriceVector next = prices;
  for (const auto& chain : chains) {
    for (int l = 0; l < chain.length(); ++l) {
      const int w = chain.contracts[static_cast<std::size_t>(l)];
      add_to_price(instance, next, chain.agents[static_cast<std::size_t>(l)], w, -1);
      add_to_price(instance, next, chain.agents[static_cast<std::size_t>(l) + 1], w, +1);
    }
  }
  return next;
}

AuctionTrace run_auction(const MarketInstance& instance, const PriceVector& initial) {
  const auto balance = validate_balanced(instance, initial);
  if (!balance.ok()) {
    throw InputError("initial prices unbalanced at contract '" +
                     instance.contract_id(balance.violations.front().contract) + "' (sum " +
                     std::to_string(balance.violations.front().sum) + ")");
  }
  for (int a = 0; a < instance.agent_count(); ++a) {
    if (auto witness = oracles::supermodularity_violation(instance, a)) {
      throw GcViolation("valuation of agent '" + instance.agent_id(a) +
                        "' is not supermodular: v" + instance.render(witness->phi) + " + v" +
                        instance.render(witness->psi) + " exceeds the union/intersection sum");
    }
  }

  // Any aggregate valuation is at least the sum of the per-agent table
  // minima, so the potential can fall at most this far. One extra round
  // signs the outcome.
  std::int64_t table_floor = 0;
  for (int a = 0; a < instance.agent_count(); ++a) {
    const auto table = instance.table(a);
    table_floor += *std::min_element(table.begin(), table.end());
  }

  AuctionTrace trace;
  PriceVector prices = initial;
  std::int64_t round_cap = 0;
  std::int64_t previous_potential = 0;
  std::size_t previous_chain_count = 0;

  for (int round = 1;; ++round) {
    auto reports = demand_all(instance, prices);
    std::int64_t potential = 0;
    for (const auto& r : reports) potential += r.optimum;

    if (round == 1) {
      round_cap = potential - table_floor + 1;
    } else if (potential !=
               previous_potential - static_cast<std::int64_t>(previous_chain_count)) {
      throw std::logic_error("potential did not drop by the applied chain count");
    }
    if (round > round_cap) {
      throw std::logic_error("auction exceeded its round bound");
    }

    AuctionRound record;
    record.round = round;
    record.prices = prices;
    for (const auto& r : reports) {
      record.reports.push_back({r.agent, static_cast<int>(r.demand_sets.size()), r.optimum});
    }
    record.lyapunov = potential;

    const auto verification = verify(reports, instance);
    record.verification = summarize(verification);

    if (verification.verdict == Verdict::kEquilibrium) {
      trace.rounds.push_back(std::move(record));
      trace.result = equilibrium_outcome(verification, instance, prices);
      trace.total_rounds = round;
      return trace;
    }

    auto chains = find_disjoint_chains(verification, reports, instance);
    record.chains = chains;
    trace.rounds.push_back(std::move(record));

    prices = adjust_prices(instance, prices, chains);
    previous_potential = potential;
    previous_chain_count = chains.size();
  }
}

}  // namespace accord
