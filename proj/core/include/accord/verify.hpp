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

#include <span>
#include <vector>

#include "accord/demand.hpp"
#include "accord/market.hpp"

namespace accord {

enum class Verdict {
  kEquilibrium,
  kNonEquilibrium,
};

/// First pair of participants that disagree on one partially agreeable
/// contract, in declared participant order.
struct DisputeWitness {
  int contract = -1;
  int demander = -1;  // contract in this participant's confined largest set
  int refuser = -1;   // but not in this one's
};

/// One level of the verification procedure. `active` is the contract set
/// still under consideration, `confined` each agent's largest demand set
/// within it, and `partially_agreeable` the contracts some participant
/// wants there while another does not.
struct VerificationLevel {
  int level = 0;  // 1-based
  Mask active = 0;
  std::vector<Mask> confined;  // per agent, agent order
  Mask partially_agreeable = 0;
  std::vector<DisputeWitness> witnesses;
};

/// Outcome of the level procedure. Levels always include the terminating
/// one: on an Equilibrium verdict its partially agreeable set is empty and
/// `support` carries the union of confined largest demand sets (the largest
/// efficient contract set under gross complements); on NonEquilibrium the
/// final level's partially agreeable set meets the strongly demanded set
/// and `witness` is that intersection.
struct VerificationTrace {
  Mask strongly_demanded = 0;  // contracts in every demand set of some agent
  std::vector<VerificationLevel> levels;
  Verdict verdict = Verdict::kEquilibrium;
  Mask support = 0;
  Mask witness = 0;

  int terminal_level() const { return static_cast<int>(levels.size()); }
};

/// Union over agents of the intersection of their demand sets.
Mask strongly_demanded(std::span<const DemandReport> reports, const MarketInstance& instance);

/// Decides whether the reported demands admit a competitive equilibrium at
/// the prices they were collected under. Expects one report per agent in
/// agent order. Raises GcViolation when some level leaves an agent with no
/// demand set inside the active contract set, which cannot happen for
/// gross-complements reports.
VerificationTrace verify(std::span<const DemandReport> reports, const MarketInstance& instance);

/// The stable outcome certified by an Equilibrium trace: the support
/// contracts signed at transfers copied from the prices. Throws
/// std::logic_error on a NonEquilibrium trace.
Outcome equilibrium_outcome(const VerificationTrace& trace, const MarketInstance& instance,
                            const PriceVector& prices);

}  // namespace accord
