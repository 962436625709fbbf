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
#include <span>
#include <vector>

#include "accord/chain.hpp"
#include "accord/verify.hpp"

namespace accord {

struct ReportSummary {
  int agent = -1;
  int demand_set_count = 0;
  std::int64_t optimum = 0;
};

struct VerificationSummary {
  Verdict verdict = Verdict::kEquilibrium;
  int terminal_level = 0;
  Mask strongly_demanded = 0;
  std::vector<Mask> partially_agreeable;  // per level
  Mask support = 0;                       // equilibrium verdicts
  Mask witness = 0;                       // non-equilibrium verdicts
};

struct AuctionRound {
  int round = 0;  // 1-based
  PriceVector prices;
  std::vector<ReportSummary> reports;
  VerificationSummary verification;
  std::vector<ComplementsChain> chains;  // empty on the final round
  std::int64_t lyapunov = 0;
};

/// Full record of one auction run. The potential drops between consecutive
/// rounds by exactly the number of chains applied, every recorded price
/// vector is balanced and integer, and the final round's verdict is an
/// equilibrium.
struct AuctionTrace {
  std::vector<AuctionRound> rounds;
  Outcome result;
  int total_rounds = 0;
};

/// One unit of price movement per chain link: the agent left of each chain
/// contract pays one less, the agent right of it pays one more. Chains must
/// have pairwise disjoint agent sets; per-contract balance is preserved.
PriceVector adjust_prices(const MarketInstance& instance, const PriceVector& prices,
                          std::span<const ComplementsChain> chains);

/// The full loop: collect demand reports, verify, and either sign the
/// supported contracts at the current prices or push prices along a maximal
/// family of agent-disjoint complements chains. Requires a balanced initial
/// vector and valuations that are supermodular for every agent (checked up
/// front; GcViolation otherwise). Terminates once the potential reaches the
/// maximum aggregate valuation.
AuctionTrace run_auction(const MarketInstance& instance, const PriceVector& initial);

}  // namespace accord
