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

#include <bit>
#include <cstdint>
#include <vector>

namespace accord {

/// A set of contracts. Bit k corresponds to the contract declared at
/// position k of the instance, so masks inherit the declared order.
using Mask = std::uint32_t;

inline int set_size(Mask m) { return std::popcount(m); }

inline bool contains(Mask m, int index) { return (m >> index) & 1u; }

inline Mask unit(int index) { return Mask{1} << index; }

inline bool is_subset(Mask sub, Mask super) { return (sub & ~super) == 0; }

/// Canonical order on contract sets: by cardinality first, then by the
/// lowest member on which the two sets differ (the set containing it sorts
/// first). For equal cardinalities this coincides with lexicographic order
/// of the ascending member lists.
inline bool canonical_less(Mask a, Mask b) {
  if (a == b) return false;
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  const Mask diff = a ^ b;
  const Mask low = diff & (~diff + 1u);
  return (a & low) != 0;
}

/// Members of the set in ascending index order.
inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace accord
