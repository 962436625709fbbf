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

#include "accord/market.hpp"

namespace accord {

struct GenParams {
  int agents = 3;
  int contracts = 4;
  int max_participants = 3;
  std::int64_t value_lo = -10;
  std::int64_t value_hi = 10;
  double synergy_density = 0.25;  // fraction of contract pairs that get a bonus
  std::uint64_t seed = 0;
};

/// Deterministic random instance: agents a1..aN, contracts w1..wM with 2 to
/// max_participants random participants each. Valuations are additive
/// per-contract terms from the value range plus nonnegative bonuses on
/// random sets of two or more contracts, which keeps every generated
/// valuation supermodular by construction. Same parameters and seed, same
/// instance.
MarketInstance generate(const GenParams& params);

}  // namespace accord
