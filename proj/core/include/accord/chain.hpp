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

#include <optional>
#include <span>
#include <vector>

#include "accord/verify.hpp"

namespace accord {

/// Alternating agent-contract sequence a0 c0 a1 c1 ... c_{s-1} a_s linking a
/// level-1 partially agreeable contract to a strongly demanded one. The
/// contract at position l (0-based) is level-(l+1) partially agreeable, not
/// demanded there by the agent to its left, demanded by the agent to its
/// right, and each contract is a complement of its successor for the agent
/// between them. Contracts are distinct; an agent may repeat, though never
/// in adjacent positions.
struct ComplementsChain {
  std::vector<int> agents;     // s+1 entries
  std::vector<int> contracts;  // s entries

  int length() const { return static_cast<int>(contracts.size()); }
  int last_agent() const { return agents.back(); }
};

/// Backward construction from the terminal level of a non-equilibrium
/// trace, depth-first with deterministic candidate order (contracts and
/// agents in declared order). Agents in `excluded` may not appear anywhere
/// in the chain. Returns nullopt when every branch dead-ends under the
/// exclusions; with no exclusions a gross-complements trace always yields a
/// chain.
std::optional<ComplementsChain> find_chain(const VerificationTrace& trace,
                                           std::span<const DemandReport> reports,
                                           const MarketInstance& instance,
                                           const std::vector<char>& excluded_agents);

/// Greedy family: repeatedly finds a chain excluding all agents already
/// used, until none remains. The result is nonempty and its chains have
/// pairwise disjoint agent sets; an immediately empty search means the
/// reports are not gross-complements and raises GcViolation.
std::vector<ComplementsChain> find_disjoint_chains(const VerificationTrace& trace,
                                                   std::span<const DemandReport> reports,
                                                   const MarketInstance& instance);

/// Checks every chain condition against the trace and reports; throws
/// std::logic_error with a description on the first violation.
void validate_chain(const ComplementsChain& chain, const VerificationTrace& trace,
                    std::span<const DemandReport> reports, const MarketInstance& instance);

}  // namespace accord
