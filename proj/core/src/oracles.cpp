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

#include "accord/oracles.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "accord/errors.hpp"

namespace accord::oracles {

namespace {

void check_market_cap(const MarketInstance& instance) {
  if (instance.contract_count() > kMaxEnumerationContracts) {
    throw InputError("instance has " + std::to_string(instance.contract_count()) +
                     " contracts; oracle enumeration is capped at " +
                     std::to_string(kMaxEnumerationContracts));
  }
}

// Everything below recomputes utilities straight from the valuation tables
// so the oracle stays independent of the demand engine it certifies.

std::int64_t bundle_price(const MarketInstance& instance, int agent, Mask bundle,
                          std::span<const std::int64_t> prices) {
  std::int64_t paid = 0;
  for (int c : members(bundle)) {
    paid += prices[static_cast<std::size_t>(instance.local_index(agent, c))];
  }
  return paid;
}

std::int64_t raw_utility(const MarketInstance& instance, int agent, Mask bundle,
                         std::span<const std::int64_t> prices) {
  return instance.value(agent, bundle) - bundle_price(instance, agent, bundle, prices);
}

std::int64_t best_utility(const MarketInstance& instance, int agent,
                          std::span<const std::int64_t> prices) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  const std::uint32_t size = 1u << instance.agent_contracts(agent).size();
  for (std::uint32_t local = 0; local < size; ++local) {
    const Mask bundle = instance.local_to_global(agent, local);
    best = std::max(best, raw_utility(instance, agent, bundle, prices));
  }
  return best;
}

std::vector<Mask> optimal_sets(const MarketInstance& instance, int agent,
                               std::span<const std::int64_t> prices) {
  const std::int64_t best = best_utility(instance, agent, prices);
  std::vector<Mask> out;
  const std::uint32_t size = 1u << instance.agent_contracts(agent).size();
  for (std::uint32_t local = 0; local < size; ++local) {
    const Mask bundle = instance.local_to_global(agent, local);
    if (raw_utility(instance, agent, bundle, prices) == best) out.push_back(bundle);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void check_ordered(const MarketInstance& instance, int agent,
                   std::span<const std::int64_t> high, std::span<const std::int64_t> low) {
  const auto m = instance.agent_contracts(agent).size();
  if (high.size() != m || low.size() != m) {
    throw InputError("price vectors do not cover the agent's contract set");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (high[k] < low[k]) {
      throw InputError("price vectors are not componentwise ordered (coordinate " +
                       instance.contract_id(instance.agent_contracts(agent)[k]) + ")");
    }
  }
}

// Enumerates every subset of {0..n-1} in canonical order: ascending
// cardinality, lexicographic member lists within one cardinality. Calls
// `visit` until it returns false.
template <typename Visit>
void for_each_canonical_subset(int n, Visit visit) {
  if (!visit(Mask{0})) return;
  for (int c = 1; c <= n; ++c) {
    std::vector<int> idx(static_cast<std::size_t>(c));
    for (int k = 0; k < c; ++k) idx[static_cast<std::size_t>(k)] = k;
    while (true) {
      Mask m = 0;
      for (int k : idx) m |= unit(k);
      if (!visit(m)) return;
      int k = c - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - c + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < c; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
}

}  // namespace

EfficientSets efficient_sets(const MarketInstance& instance) {
  check_market_cap(instance);
  const Mask all = instance.all_contracts();
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (Mask phi = 0;; ++phi) {
    best = std::max(best, aggregate_valuation(instance, phi));
    if (phi == all) break;
  }
  EfficientSets out;
  out.max_value = best;
  for (Mask phi = 0;; ++phi) {
    if (aggregate_valuation(instance, phi) == best) {
      out.maximizers.push_back(phi);
      out.largest |= phi;
    }
    if (phi == all) break;
  }
  std::sort(out.maximizers.begin(), out.maximizers.end(), canonical_less);
  return out;
}

std::optional<SubsetPair> supermodularity_violation(const MarketInstance& instance, int agent) {
  const auto table = instance.table(agent);
  const int m = static_cast<int>(instance.agent_contracts(agent).size());
  for (std::uint32_t base = 0; base < table.size(); ++base) {
    for (int x = 0; x < m; ++x) {
      if ((base >> x) & 1u) continue;
      for (int y = x + 1; y < m; ++y) {
        if ((base >> y) & 1u) continue;
        const std::uint32_t with_x = base | (1u << x);
        const std::uint32_t with_y = base | (1u << y);
        const std::uint32_t with_both = with_x | (1u << y);
        if (table[with_x] + table[with_y] > table[with_both] + table[base]) {
          return SubsetPair{instance.local_to_global(agent, with_x),
                            instance.local_to_global(agent, with_y)};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<SubsetPair> supermodularity_violation_pairwise(const MarketInstance& instance,
                                                             int agent) {
  const auto table = instance.table(agent);
  const int m = static_cast<int>(instance.agent_contracts(agent).size());
  if (m > 10) {
    throw InputError("pairwise supermodularity check is capped at 10 contracts per agent");
  }
  for (std::uint32_t phi = 0; phi < table.size(); ++phi) {
    for (std::uint32_t psi = phi + 1; psi < table.size(); ++psi) {
      if (table[phi] + table[psi] > table[phi | psi] + table[phi & psi]) {
        return SubsetPair{instance.local_to_global(agent, phi),
                          instance.local_to_global(agent, psi)};
      }
    }
  }
  return std::nullopt;
}

std::optional<Mask> equilibrium_support(const MarketInstance& instance,
                                        const PriceVector& prices) {
  check_market_cap(instance);
  if (!prices.shape_matches(instance)) {
    throw InputError("price vector does not match the instance's participation structure");
  }

  // Per-agent optimality of every local bundle.
  std::vector<std::vector<bool>> optimal(static_cast<std::size_t>(instance.agent_count()));
  for (int a = 0; a < instance.agent_count(); ++a) {
    const std::int64_t best = best_utility(instance, a, prices.agent(a));
    auto& flags = optimal[static_cast<std::size_t>(a)];
    flags.resize(std::size_t{1} << instance.agent_contracts(a).size());
    for (std::uint32_t local = 0; local < flags.size(); ++local) {
      const Mask bundle = instance.local_to_global(a, local);
      flags[local] = raw_utility(instance, a, bundle, prices.agent(a)) == best;
    }
  }

  std::optional<Mask> found;
  for_each_canonical_subset(instance.contract_count(), [&](Mask phi) {
    for (int a = 0; a < instance.agent_count(); ++a) {
      const Mask own = phi & instance.agent_mask(a);
      if (!optimal[static_cast<std::size_t>(a)][instance.global_to_local(a, own)]) return true;
    }
    found = phi;
    return false;
  });
  return found;
}

std::optional<AntitoneViolation> antitone_violation(const MarketInstance& instance, int agent,
                                                    std::span<const std::int64_t> high,
                                                    std::span<const std::int64_t> low) {
  check_ordered(instance, agent, high, low);
  const auto d_high = optimal_sets(instance, agent, high);
  const auto d_low = optimal_sets(instance, agent, low);
  const std::int64_t best_high = best_utility(instance, agent, high);
  const std::int64_t best_low = best_utility(instance, agent, low);
  for (Mask phi : d_high) {
    for (Mask psi : d_low) {
      const bool inter_ok = raw_utility(instance, agent, phi & psi, high) == best_high;
      const bool union_ok = raw_utility(instance, agent, phi | psi, low) == best_low;
      if (!inter_ok || !union_ok) {
        return AntitoneViolation{phi, psi, inter_ok, union_ok};
      }
    }
  }
  return std::nullopt;
}

std::optional<Mask> gc_lowering_violation(const MarketInstance& instance, int agent,
                                          std::span<const std::int64_t> high,
                                          std::span<const std::int64_t> low) {
  check_ordered(instance, agent, high, low);
  const auto d_high = optimal_sets(instance, agent, high);
  const auto d_low = optimal_sets(instance, agent, low);
  for (Mask phi : d_high) {
    Mask kept = 0;
    for (int c : members(phi)) {
      const auto k = static_cast<std::size_t>(instance.local_index(agent, c));
      if (high[k] == low[k]) kept |= unit(c);
    }
    bool covered = false;
    for (Mask psi : d_low) {
      if (is_subset(kept, psi)) {
        covered = true;
        break;
      }
    }
    if (!covered) return phi;
  }
  return std::nullopt;
}

PricePair antitone_counterexample(const MarketInstance& instance, int agent,
                                  const SubsetPair& violation) {
  const Mask shared = violation.phi & violation.psi;
  const Mask only_phi = violation.phi & ~violation.psi;
  const Mask only_psi = violation.psi & ~violation.phi;
  if (set_size(only_phi) != 1 || set_size(only_psi) != 1) {
    throw std::logic_error("antitone_counterexample expects a single-swap violation witness");
  }
  const int x = members(only_phi).front();
  const int y = members(only_psi).front();

  const auto table = instance.table(agent);
  const auto [min_it, max_it] = std::minmax_element(table.begin(), table.end());
  const std::int64_t span = *max_it - *min_it;
  const std::int64_t forcing = span + 1;

  const auto own = instance.agent_contracts(agent);
  std::vector<std::int64_t> prices(own.size(), 0);
  for (std::size_t k = 0; k < own.size(); ++k) {
    const int c = own[k];
    if (contains(shared, c)) {
      prices[k] = -forcing;
    } else if (c != x && c != y) {
      prices[k] = forcing;
    }
  }
  const auto kx = static_cast<std::size_t>(instance.local_index(agent, x));
  const auto ky = static_cast<std::size_t>(instance.local_index(agent, y));

  for (std::int64_t rx = -forcing; rx <= forcing; ++rx) {
    for (std::int64_t ry = -forcing; ry <= forcing; ++ry) {
      prices[kx] = rx;
      prices[ky] = ry;
      if (antitone_violation(instance, agent, prices, prices)) {
        return PricePair{prices, prices};
      }
    }
  }
  throw std::logic_error("no antitone counterexample on the search grid");
}

StabilityReport is_stable(const MarketInstance& instance, const Outcome& outcome) {
  for (int a = 0; a < instance.agent_count(); ++a) {
    if (auto witness = supermodularity_violation(instance, a)) {
      throw GcViolation("valuation of agent '" + instance.agent_id(a) +
                        "' is not supermodular; the stability characterization needs gross "
                        "complements");
    }
  }
  const Outcome checked = make_outcome(instance, outcome.entries);

  PriceVector prices = PriceVector::zero(instance);
  for (const auto& e : checked.entries) {
    const auto parts = instance.participants(e.contract);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      set_price(instance, prices, parts[k], e.contract, e.transfers[k]);
    }
  }
  const Mask signed_set = checked.signed_contracts();

  StabilityReport report;
  const auto efficient = efficient_sets(instance);
  if (signed_set != efficient.largest) {
    report.failures.push_back({StabilityFailure::Kind::kNotLargestEfficient, -1,
                               "signed set " + instance.render(signed_set) +
                                   " is not the largest efficient set " +
                                   instance.render(efficient.largest)});
  }

  // Individual rationality: each agent's full signed bundle must beat every
  // subset of it at the given transfers. Together with signing the largest
  // efficient set this settles stability: supermodularity makes keeping the
  // whole signed bundle optimal whatever unsigned contracts are added, so a
  // balanced completion of the transfers that deters every unsigned
  // contract always exists. Transfers on unsigned contracts therefore never
  // enter the verdict.
  for (int a = 0; a < instance.agent_count(); ++a) {
    const Mask mine = signed_set & instance.agent_mask(a);
    const std::int64_t at_signed = raw_utility(instance, a, mine, prices.agent(a));
    Mask better = 0;
    std::int64_t best = at_signed;
    Mask sub = mine;
    while (true) {
      const std::int64_t u = raw_utility(instance, a, sub, prices.agent(a));
      if (u > best) {
        best = u;
        better = sub;
      }
      if (sub == 0) break;
      sub = (sub - 1) & mine;
    }
    if (best > at_signed) {
      report.failures.push_back(
          {StabilityFailure::Kind::kIndividuallyIrrational, a,
           "agent '" + instance.agent_id(a) + "' gets utility " + std::to_string(at_signed) +
               " from her signed set " + instance.render(mine) + " but " + std::to_string(best) +
               " from " + instance.render(better)});
    }
  }

  return report;
}

}  // namespace accord::oracles
