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
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "accord/subsets.hpp"

namespace accord {

/// Demand enumeration and valuation tables are exponential in the number of
/// contracts one agent participates in; instances beyond this are rejected
/// at construction.
inline constexpr int kMaxContractsPerAgent = 20;

/// Compact valuation encoding kept alongside the expanded table so that
/// emission can reproduce the source form: per-contract additive terms plus
/// nonnegative bonuses granted when a whole set is signed.
struct SynergyData {
  std::vector<std::int64_t> additive;  // aligned with the agent's contract list
  struct Bonus {
    Mask set = 0;  // global mask, at least two members
    std::int64_t value = 0;
  };
  std::vector<Bonus> bonuses;
};

/// Immutable market model: agents, multi-party contracts, and one complete
/// integer valuation table per agent over the subsets of her contract set.
///
/// All identifiers are opaque strings; every internal ordering (and hence
/// every tie-break downstream) is the declared order of the instance.
class MarketInstance {
 public:
  class Builder;

  int agent_count() const { return static_cast<int>(agents_.size()); }
  int contract_count() const { return static_cast<int>(contract_ids_.size()); }

  const std::string& agent_id(int agent) const { return agents_[static_cast<std::size_t>(agent)]; }
  const std::string& contract_id(int contract) const {
    return contract_ids_[static_cast<std::size_t>(contract)];
  }

  /// Index lookups throw InputError for unknown ids.
  int agent_index(std::string_view id) const;
  int contract_index(std::string_view id) const;

  /// Participants of a contract in the order the instance declared them.
  std::span<const int> participants(int contract) const {
    return participants_[static_cast<std::size_t>(contract)];
  }
  bool participates(int agent, int contract) const {
    return local_of_[static_cast<std::size_t>(agent)][static_cast<std::size_t>(contract)] >= 0;
  }

  /// The agent's contract set, ascending by declared contract index.
  std::span<const int> agent_contracts(int agent) const {
    return agent_contracts_[static_cast<std::size_t>(agent)];
  }
  Mask agent_mask(int agent) const { return agent_masks_[static_cast<std::size_t>(agent)]; }
  Mask all_contracts() const {
    return contract_count() == 0 ? 0 : (Mask{1} << contract_count()) - 1u;
  }

  /// Position of a contract within the agent's contract list, or -1.
  int local_index(int agent, int contract) const {
    return local_of_[static_cast<std::size_t>(agent)][static_cast<std::size_t>(contract)];
  }

  /// Valuation v_i(bundle). The bundle is a global mask and must be a
  /// subset of the agent's contract set.
  std::int64_t value(int agent, Mask bundle) const;

  /// Raw table of one agent, indexed by local mask (bit k is the k-th entry
  /// of agent_contracts(agent)).
  std::span<const std::int64_t> table(int agent) const {
    return tables_[static_cast<std::size_t>(agent)];
  }

  const std::optional<SynergyData>& synergy(int agent) const {
    return synergy_[static_cast<std::size_t>(agent)];
  }

  Mask local_to_global(int agent, std::uint32_t local) const;
  std::uint32_t global_to_local(int agent, Mask bundle) const;

  /// Resolves a list of contract ids into a mask; duplicates and unknown
  /// ids are errors.
  Mask contract_set(std::span<const std::string> ids) const;

  /// Renders a mask as "{w1, w4}" using declared ids, for diagnostics.
  std::string render(Mask set) const;

 private:
  MarketInstance() = default;

  std::vector<std::string> agents_;
  std::vector<std::string> contract_ids_;
  std::vector<std::vector<int>> participants_;     // [contract], declared order
  std::vector<std::vector<int>> agent_contracts_;  // [agent], ascending
  std::vector<std::vector<int>> local_of_;         // [agent][contract] -> local index or -1
  std::vector<Mask> agent_masks_;
  std::vector<std::vector<std::int64_t>> tables_;  // [agent][local mask]
  std::vector<std::optional<SynergyData>> synergy_;
  std::unordered_map<std::string, int> agent_lookup_;
  std::unordered_map<std::string, int> contract_lookup_;
};

/// Declarative construction with full validation in build(): at least two
/// participants per contract, participants declared, exactly one complete
/// valuation table per agent. A missing subset entry is an error, never an
/// implicit zero.
class MarketInstance::Builder {
 public:
  Builder& agent(std::string id);
  Builder& contract(std::string id, std::vector<std::string> participant_ids);

  /// One explicit table entry; every subset of the agent's contract set is
  /// required, including the empty set.
  Builder& value(std::string agent_id, std::vector<std::string> set, std::int64_t v);

  /// Whole synergy-form valuation for one agent. Contracts missing from
  /// `additive` contribute zero; bonus values must be nonnegative and bonus
  /// sets must have at least two members.
  struct BonusSpec {
    std::vector<std::string> set;
    std::int64_t value = 0;
  };
  Builder& synergy(std::string agent_id,
                   std::vector<std::pair<std::string, std::int64_t>> additive,
                   std::vector<BonusSpec> bonuses);

  MarketInstance build() const;

 private:
  struct RawEntry {
    std::string agent;
    std::vector<std::string> set;
    std::int64_t value;
  };
  struct RawSynergy {
    std::string agent;
    std::vector<std::pair<std::string, std::int64_t>> additive;
    std::vector<BonusSpec> bonuses;
  };
  struct RawContract {
    std::string id;
    std::vector<std::string> participants;
  };

  std::vector<std::string> agents_;
  std::vector<RawContract> contracts_;
  std::vector<RawEntry> entries_;
  std::vector<RawSynergy> synergies_;
};

/// Integer price per (participant, contract) pair. The domain is exactly
/// the participation pairs of one instance; there is no coordinate for a
/// non-participant, so domain violations are unrepresentable. Balance is a
/// separate property checked by validate_balanced.
///
/// Treated as an immutable value wherever it is shared; the auction mutates
/// only private copies.
class PriceVector {
 public:
  PriceVector() = default;
  static PriceVector zero(const MarketInstance& instance);

  /// Prices of one agent, aligned with instance.agent_contracts(agent).
  std::span<const std::int64_t> agent(int agent) const {
    return per_agent_[static_cast<std::size_t>(agent)];
  }
  std::span<std::int64_t> agent(int agent) {
    return per_agent_[static_cast<std::size_t>(agent)];
  }

  int agent_count() const { return static_cast<int>(per_agent_.size()); }
  bool shape_matches(const MarketInstance& instance) const;

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  std::vector<std::vector<std::int64_t>> per_agent_;
};

/// Price of one coordinate; the pair must belong to the instance's domain.
std::int64_t price_at(const MarketInstance& instance, const PriceVector& prices, int agent,
                      int contract);
void add_to_price(const MarketInstance& instance, PriceVector& prices, int agent, int contract,
                  std::int64_t delta);
void set_price(const MarketInstance& instance, PriceVector& prices, int agent, int contract,
               std::int64_t value);

/// Signed contracts with zero-sum transfer vectors. Entries are unique per
/// contract and kept in ascending contract order.
struct Outcome {
  struct Entry {
    int contract = -1;
    std::vector<std::int64_t> transfers;  // aligned with participants(contract)
  };
  std::vector<Entry> entries;

  Mask signed_contracts() const;
};

/// Validates zero-sum transfers and per-contract uniqueness; throws
/// InputError otherwise. Entries are reordered canonically.
Outcome make_outcome(const MarketInstance& instance, std::vector<Outcome::Entry> entries);

/// v_agent(bundle) minus the agent's prices over the bundle. `agent_prices`
/// is aligned with the agent's contract list; `bundle` must be a subset of
/// that list.
std::int64_t utility(const MarketInstance& instance, int agent, Mask bundle,
                     std::span<const std::int64_t> agent_prices);

/// Sum over agents of v_i(contract_set restricted to the agent).
std::int64_t aggregate_valuation(const MarketInstance& instance, Mask contract_set);

struct BalanceReport {
  struct Violation {
    int contract = -1;
    std::int64_t sum = 0;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// A price vector is balanced when every contract's participant prices sum
/// to zero.
BalanceReport validate_balanced(const MarketInstance& instance, const PriceVector& prices);

}  // namespace accord
