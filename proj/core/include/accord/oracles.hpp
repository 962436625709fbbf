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
#include <vector>

#include "accord/market.hpp"

// Brute-force ground truth, kept independent of the engine's own code
// paths: everything here enumerates subsets directly from valuations.
namespace accord::oracles {

/// Enumeration bound for whole-market subset scans.
inline constexpr int kMaxEnumerationContracts = 16;

struct EfficientSets {
  std::int64_t max_value = 0;
  std::vector<Mask> maximizers;  // canonical order
  Mask largest = 0;              // union of maximizers
};

/// All maximizers of the aggregate valuation over the 2^|contracts|
/// candidate sets. Under gross complements the maximizers form a lattice,
/// so `largest` is itself a maximizer.
EfficientSets efficient_sets(const MarketInstance& instance);

struct SubsetPair {
  Mask phi = 0;
  Mask psi = 0;
};

/// Local increasing-returns check over every subset and pair of missing
/// contracts; equivalent to the pairwise definition but O(2^m m^2) instead
/// of O(4^m). Returns the first violating pair (as full subsets) or nullopt
/// when the valuation is supermodular.
std::optional<SubsetPair> supermodularity_violation(const MarketInstance& instance, int agent);

/// Definitional cross-check over all pairs of subsets; capped at 10
/// contracts per agent.
std::optional<SubsetPair> supermodularity_violation_pairwise(const MarketInstance& instance,
                                                             int agent);

inline bool is_supermodular(const MarketInstance& instance, int agent) {
  return !supermodularity_violation(instance, agent);
}

/// First contract set (canonical order) that every agent demands at these
/// prices, or nullopt when the prices admit no competitive equilibrium.
std::optional<Mask> equilibrium_support(const MarketInstance& instance,
                                        const PriceVector& prices);

struct AntitoneViolation {
  Mask phi = 0;  // demanded at the higher prices
  Mask psi = 0;  // demanded at the lower prices
  bool intersection_optimal_high = false;
  bool union_optimal_low = false;
};

/// Checks, for componentwise p >= q, that intersections of demand sets stay
/// optimal at p and unions stay optimal at q. Exhaustive over all demand
/// set pairs; returns the first violation.
std::optional<AntitoneViolation> antitone_violation(const MarketInstance& instance, int agent,
                                                    std::span<const std::int64_t> high,
                                                    std::span<const std::int64_t> low);

/// Checks, for componentwise p >= q, that every demand set at p keeps its
/// unchanged-price contracts inside some demand set at q. Returns a
/// demanded set at p with no such counterpart.
std::optional<Mask> gc_lowering_violation(const MarketInstance& instance, int agent,
                                          std::span<const std::int64_t> high,
                                          std::span<const std::int64_t> low);

struct PricePair {
  std::vector<std::int64_t> high;
  std::vector<std::int64_t> low;
};

/// Turns a supermodularity violation into concrete prices at which the
/// antitone check fails: contracts in the common part are forced in, all
/// others forced out, and the two free coordinates are grid-searched over
/// the valuation span.
PricePair antitone_counterexample(const MarketInstance& instance, int agent,
                                  const SubsetPair& violation);

struct StabilityFailure {
  enum class Kind {
    kNotLargestEfficient,
    kIndividuallyIrrational,
  };
  Kind kind;
  int agent = -1;
  std::string detail;
};

struct StabilityReport {
  std::vector<StabilityFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Stability under gross complements: the signed set must be the largest
/// efficient set and each agent's signed bundle must beat all of its own
/// subsets at the given transfers. Supermodularity then guarantees a
/// balanced price completion on the unsigned contracts under which every
/// agent demands exactly her signed bundle, so these two checks decide
/// stability. Raises GcViolation when some valuation is not supermodular.
StabilityReport is_stable(const MarketInstance& instance, const Outcome& outcome);

}  // namespace accord::oracles
