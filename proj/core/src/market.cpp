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

#include "accord/market.hpp"

#include <algorithm>
#include <bit>

#include "accord/errors.hpp"

namespace accord {

namespace {

std::string render_ids(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  out += "}";
  return out;
}

}  // namespace

int MarketInstance::agent_index(std::string_view id) const {
  auto it = agent_lookup_.find(std::string(id));
  if (it == agent_lookup_.end()) throw InputError("unknown agent '" + std::string(id) + "'");
  return it->second;
}

int MarketInstance::contract_index(std::string_view id) const {
  auto it = contract_lookup_.find(std::string(id));
  if (it == contract_lookup_.end()) throw InputError("unknown contract '" + std::string(id) + "'");
  return it->second;
}

std::int64_t MarketInstance::value(int agent, Mask bundle) const {
  return tables_[static_cast<std::size_t>(agent)][global_to_local(agent, bundle)];
}

Mask MarketInstance::local_to_global(int agent, std::uint32_t local) const {
  const auto& own = agent_contracts_[static_cast<std::size_t>(agent)];
  Mask out = 0;
  while (local != 0) {
    const int k = std::countr_zero(local);
    out |= unit(own[static_cast<std::size_t>(k)]);
    local &= local - 1;
  }
  return out;
}

std::uint32_t MarketInstance::global_to_local(int agent, Mask bundle) const {
  if (!is_subset(bundle, agent_masks_[static_cast<std::size_t>(agent)])) {
    throw InputError("bundle " + render(bundle) + " is not contained in agent '" +
                     agent_id(agent) + "' contract set " +
                     render(agent_masks_[static_cast<std::size_t>(agent)]));
  }
  const auto& own = agent_contracts_[static_cast<std::size_t>(agent)];
  std::uint32_t local = 0;
  for (std::size_t k = 0; k < own.size(); ++k) {
    if (contains(bundle, own[k])) local |= (1u << k);
  }
  return local;
}

Mask MarketInstance::contract_set(std::span<const std::string> ids) const {
  Mask out = 0;
  for (const auto& id : ids) {
    const int c = contract_index(id);
    if (contains(out, c)) throw InputError("duplicate contract '" + id + "' in set");
    out |= unit(c);
  }
  return out;
}

std::string MarketInstance::render(Mask set) const {
  std::string out = "{";
  bool first = true;
  for (int c : members(set)) {
    if (!first) out += ", ";
    out += contract_id(c);
    first = false;
  }
  out += "}";
  return out;
}

MarketInstance::Builder& MarketInstance::Builder::agent(std::string id) {
  agents_.push_back(std::move(id));
  return *this;
}

MarketInstance::Builder& MarketInstance::Builder::contract(std::string id,
                                                           std::vector<std::string> participant_ids) {
  contracts_.push_back({std::move(id), std::move(participant_ids)});
  return *this;
}

MarketInstance::Builder& MarketInstance::Builder::value(std::string agent_id,
                                                        std::vector<std::string> set,
                                                        std::int64_t v) {
  entries_.push_back({std::move(agent_id), std::move(set), v});
  return *this;
}

MarketInstance::Builder& MarketInstance::Builder::synergy(
    std::string agent_id, std::vector<std::pair<std::string, std::int64_t>> additive,
    std::vector<BonusSpec> bonuses) {
  synergies_.push_back({std::move(agent_id), std::move(additive), std::move(bonuses)});
  return *this;
}

MarketInstance MarketInstance::Builder::build() const {
  MarketInstance inst;

  for (const auto& a : agents_) {
    if (a.empty()) throw InputError("agent ids must be nonempty");
    if (!inst.agent_lookup_.emplace(a, static_cast<int>(inst.agents_.size())).second) {
      throw InputError("duplicate agent id '" + a + "'");
    }
    inst.agents_.push_back(a);
  }

  if (contracts_.size() > 8 * sizeof(Mask)) {
    throw InputError("too many contracts (limit " + std::to_string(8 * sizeof(Mask)) + ")");
  }
  for (const auto& c : contracts_) {
    if (c.id.empty()) throw InputError("contract ids must be nonempty");
    if (!inst.contract_lookup_.emplace(c.id, static_cast<int>(inst.contract_ids_.size())).second) {
      throw InputError("duplicate contract id '" + c.id + "'");
    }
    inst.contract_ids_.push_back(c.id);
    std::vector<int> members;
    for (const auto& p : c.participants) {
      const int a = inst.agent_index(p);
      if (std::find(members.begin(), members.end(), a) != members.end()) {
        throw InputError("contract '" + c.id + "' lists participant '" + p + "' twice");
      }
      members.push_back(a);
    }
    if (members.size() < 2) {
      throw InputError("contract '" + c.id + "' needs at least 2 participants");
    }
    inst.participants_.push_back(std::move(members));
  }

  const int n_agents = inst.agent_count();
  const int n_contracts = inst.contract_count();
  inst.agent_contracts_.assign(static_cast<std::size_t>(n_agents), {});
  inst.local_of_.assign(static_cast<std::size_t>(n_agents),
                        std::vector<int>(static_cast<std::size_t>(n_contracts), -1));
  inst.agent_masks_.assign(static_cast<std::size_t>(n_agents), 0);
  for (int c = 0; c < n_contracts; ++c) {
    for (int a : inst.participants_[static_cast<std::size_t>(c)]) {
      auto& own = inst.agent_contracts_[static_cast<std::size_t>(a)];
      inst.local_of_[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] =
          static_cast<int>(own.size());
      own.push_back(c);
      inst.agent_masks_[static_cast<std::size_t>(a)] |= unit(c);
    }
  }
  for (int a = 0; a < n_agents; ++a) {
    const auto m = inst.agent_contracts_[static_cast<std::size_t>(a)].size();
    if (m > kMaxContractsPerAgent) {
      throw InputError("agent '" + inst.agent_id(a) + "' participates in " + std::to_string(m) +
                       " contracts; the enumeration cap is " +
                       std::to_string(kMaxContractsPerAgent));
    }
  }

  inst.tables_.assign(static_cast<std::size_t>(n_agents), {});
  inst.synergy_.assign(static_cast<std::size_t>(n_agents), std::nullopt);
  std::vector<bool> has_valuation(static_cast<std::size_t>(n_agents), false);

  // Explicit tables.
  std::vector<std::vector<bool>> filled(static_cast<std::size_t>(n_agents));
  for (const auto& e : entries_) {
    const int a = inst.agent_index(e.agent);
    const auto m = inst.agent_contracts_[static_cast<std::size_t>(a)].size();
    auto& table = inst.tables_[static_cast<std::size_t>(a)];
    if (table.empty()) {
      table.assign(std::size_t{1} << m, 0);
      filled[static_cast<std::size_t>(a)].assign(std::size_t{1} << m, false);
      has_valuation[static_cast<std::size_t>(a)] = true;
    }
    Mask set = 0;
    for (const auto& id : e.set) {
      const int c = inst.contract_index(id);
      if (!inst.participates(a, c)) {
        throw InputError("valuation for agent '" + e.agent + "' mentions contract '" + id +
                         "' the agent does not participate in");
      }
      if (contains(set, c)) {
        throw InputError("valuation entry for agent '" + e.agent + "' lists contract '" + id +
                         "' twice");
      }
      set |= unit(c);
    }
    const std::uint32_t local = inst.global_to_local(a, set);
    if (filled[static_cast<std::size_t>(a)][local]) {
      throw InputError("duplicate valuation entry for agent '" + e.agent + "', subset " +
                       render_ids(e.set));
    }
    filled[static_cast<std::size_t>(a)][local] = true;
    table[local] = e.value;
  }

  // Synergy forms, expanded into tables.
  for (const auto& s : synergies_) {
    const int a = inst.agent_index(s.agent);
    if (has_valuation[static_cast<std::size_t>(a)]) {
      throw InputError("agent '" + s.agent + "' has more than one valuation definition");
    }
    has_valuation[static_cast<std::size_t>(a)] = true;
    const auto& own = inst.agent_contracts_[static_cast<std::size_t>(a)];
    const std::size_t m = own.size();

    SynergyData data;
    data.additive.assign(m, 0);
    std::vector<bool> seen(m, false);
    for (const auto& [id, v] : s.additive) {
      const int c = inst.contract_index(id);
      const int k = inst.local_index(a, c);
      if (k < 0) {
        throw InputError("synergy valuation for agent '" + s.agent + "' mentions contract '" + id +
                         "' the agent does not participate in");
      }
      if (seen[static_cast<std::size_t>(k)]) {
        throw InputError("synergy valuation for agent '" + s.agent + "' lists contract '" + id +
                         "' twice");
      }
      seen[static_cast<std::size_t>(k)] = true;
      data.additive[static_cast<std::size_t>(k)] = v;
    }
    for (const auto& b : s.bonuses) {
      if (b.value < 0) {
        throw InputError("synergy bonus for agent '" + s.agent + "' has negative value " +
                         std::to_string(b.value));
      }
      Mask set = 0;
      for (const auto& id : b.set) {
        const int c = inst.contract_index(id);
        if (!inst.participates(a, c)) {
          throw InputError("synergy bonus for agent '" + s.agent + "' mentions contract '" + id +
                           "' the agent does not participate in");
        }
        if (contains(set, c)) {
          throw InputError("synergy bonus for agent '" + s.agent + "' lists contract '" + id +
                           "' twice");
        }
        set |= unit(c);
      }
      if (set_size(set) < 2) {
        throw InputError("synergy bonus for agent '" + s.agent + "' needs at least 2 contracts");
      }
      data.bonuses.push_back({set, b.value});
    }

    auto& table = inst.tables_[static_cast<std::size_t>(a)];
    table.assign(std::size_t{1} << m, 0);
    for (std::uint32_t local = 0; local < table.size(); ++local) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if ((local >> k) & 1u) v += data.additive[k];
      }
      const Mask global = inst.local_to_global(a, local);
      for (const auto& b : data.bonuses) {
        if (is_subset(b.set, global)) v += b.value;
      }
      table[local] = v;
    }
    inst.synergy_[static_cast<std::size_t>(a)] = std::move(data);
  }

  for (int a = 0; a < n_agents; ++a) {
    if (!has_valuation[static_cast<std::size_t>(a)]) {
      throw InputError("no valuation given for agent '" + inst.agent_id(a) + "'");
    }
    const auto& f = filled[static_cast<std::size_t>(a)];
    if (f.empty()) continue;  // synergy form covers the whole table
    for (std::uint32_t local = 0; local < f.size(); ++local) {
      if (!f[local]) {
        throw InputError("valuation for agent '" + inst.agent_id(a) + "' missing subset " +
                         inst.render(inst.local_to_global(a, local)));
      }
    }
  }

  return inst;
}

PriceVector PriceVector::zero(const MarketInstance& instance) {
  PriceVector p;
  p.per_agent_.resize(static_cast<std::size_t>(instance.agent_count()));
  for (int a = 0; a < instance.agent_count(); ++a) {
    p.per_agent_[static_cast<std::size_t>(a)].assign(instance.agent_contracts(a).size(), 0);
  }
  return p;
}

bool PriceVector::shape_matches(const MarketInstance& instance) const {
  if (agent_count() != instance.agent_count()) return false;
  for (int a = 0; a < agent_count(); ++a) {
    if (per_agent_[static_cast<std::size_t>(a)].size() != instance.agent_contracts(a).size()) {
      return false;
    }
  }
  return true;
}

namespace {
int require_pair(const MarketInstance& instance, int agent, int contract) {
  const int k = instance.local_index(agent, contract);
  if (k < 0) {
    throw InputError("agent '" + instance.agent_id(agent) + "' does not participate in contract '" +
                     instance.contract_id(contract) + "'");
  }
  return k;
}
}  // namespace

std::int64_t price_at(const MarketInstance& instance, const PriceVector& prices, int agent,
                      int contract) {
  return prices.agent(agent)[static_cast<std::size_t>(require_pair(instance, agent, contract))];
}

void add_to_price(const MarketInstance& instance, PriceVector& prices, int agent, int contract,
                  std::int64_t delta) {
  prices.agent(agent)[static_cast<std::size_t>(require_pair(instance, agent, contract))] += delta;
}

void set_price(const MarketInstance& instance, PriceVector& prices, int agent, int contract,
               std::int64_t value) {
  prices.agent(agent)[static_cast<std::size_t>(require_pair(instance, agent, contract))] = value;
}

Mask Outcome::signed_contracts() const {
  Mask out = 0;
  for (const auto& e : entries) out |= unit(e.contract);
  return out;
}

Outcome make_outcome(const MarketInstance& instance, std::vector<Outcome::Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& l, const auto& r) { return l.contract < r.contract; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.contract < 0 || e.contract >= instance.contract_count()) {
      throw InputError("outcome signs an unknown contract");
    }
    if (i > 0 && entries[i - 1].contract == e.contract) {
      throw InputError("outcome signs contract '" + instance.contract_id(e.contract) + "' twice");
    }
    const auto parts = instance.participants(e.contract);
    if (e.transfers.size() != parts.size()) {
      throw InputError("outcome transfers for contract '" + instance.contract_id(e.contract) +
                       "' must cover exactly its participants");
    }
    std::int64_t sum = 0;
    for (std::int64_t t : e.transfers) sum += t;
    if (sum != 0) {
      throw InputError("transfers for contract '" + instance.contract_id(e.contract) +
                       "' must sum to zero; got " + std::to_string(sum));
    }
  }
  Outcome out;
  out.entries = std::move(entries);
  return out;
}

std::int64_t utility(const MarketInstance& instance, int agent, Mask bundle,
                     std::span<const std::int64_t> agent_prices) {
  const std::uint32_t local = instance.global_to_local(agent, bundle);
  std::int64_t paid = 0;
  std::uint32_t rest = local;
  while (rest != 0) {
    paid += agent_prices[static_cast<std::size_t>(std::countr_zero(rest))];
    rest &= rest - 1;
  }
  return instance.table(agent)[local] - paid;
}

std::int64_t aggregate_valuation(const MarketInstance& instance, Mask contract_set) {
  if (!is_subset(contract_set, instance.all_contracts())) {
    throw InputError("contract set is not contained in the instance's contracts");
  }
  std::int64_t total = 0;
  for (int a = 0; a < instance.agent_count(); ++a) {
    total += instance.value(a, contract_set & instance.agent_mask(a));
  }
  return total;
}

BalanceReport validate_balanced(const MarketInstance& instance, const PriceVector& prices) {
  if (!prices.shape_matches(instance)) {
    throw InputError("price vector does not match the instance's participation structure");
  }
  BalanceReport report;
  for (int c = 0; c < instance.contract_count(); ++c) {
    std::int64_t sum = 0;
    for (int a : instance.participants(c)) {
      sum += prices.agent(a)[static_cast<std::size_t>(instance.local_index(a, c))];
    }
    if (sum != 0) report.violations.push_back({c, sum});
  }
  return report;
}

}  // namespace accord
