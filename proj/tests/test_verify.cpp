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

#include <doctest.h>

#include <stdexcept>

#include "accord/errors.hpp"
#include "accord/io.hpp"
#include "accord/verify.hpp"
#include "support/fixtures.hpp"

using namespace accord;
using namespace accord::testing;

TEST_CASE("strongly demanded contracts on the report fixtures") {
  const auto inst = fixture_a_instance();
  const auto reports = fixture_a_reports(inst);
  CHECK(strongly_demanded(reports, inst) == mask_of(inst, {"w1", "w2"}));
}

TEST_CASE("strongly demanded is empty when every agent can walk away") {
  const auto inst = fixture_a_instance();
  const auto reports = io::parse_reports(R"({"reports": {
    "i1": [[], ["w1"]], "i2": [[], ["w1"]], "i3": [[], ["w2"]]
  }})",
                                         inst);
  CHECK(strongly_demanded(reports, inst) == 0);
}

TEST_CASE("singleton reports make every demanded contract strongly demanded") {
  const auto inst = fixture_a_instance();
  const auto reports = io::parse_reports(R"({"reports": {
    "i1": [["w1", "w2"]], "i2": [["w1"]], "i3": [["w3"]]
  }})",
                                         inst);
  CHECK(strongly_demanded(reports, inst) == mask_of(inst, {"w1", "w2", "w3"}));
}

TEST_CASE("the level procedure reproduces the four-step dispute cascade") {
  const auto inst = fixture_a_instance();
  const auto reports = fixture_a_reports(inst);
  const auto trace = verify(reports, inst);

  CHECK(trace.verdict == Verdict::kNonEquilibrium);
  CHECK(trace.terminal_level() == 4);
  CHECK(trace.strongly_demanded == mask_of(inst, {"w1", "w2"}));
  CHECK(trace.witness == mask_of(inst, {"w2"}));

  REQUIRE(trace.levels.size() == 4);
  CHECK(trace.levels[0].partially_agreeable == mask_of(inst, {"w5"}));
  CHECK(trace.levels[1].partially_agreeable == mask_of(inst, {"w4"}));
  CHECK(trace.levels[2].partially_agreeable == mask_of(inst, {"w3"}));
  CHECK(trace.levels[3].partially_agreeable == mask_of(inst, {"w2"}));

  CHECK(trace.levels[1].active == mask_of(inst, {"w1", "w2", "w3", "w4"}));
  CHECK(trace.levels[1].confined[0] == mask_of(inst, {"w1", "w2", "w3", "w4"}));
  CHECK(trace.levels[1].confined[1] == mask_of(inst, {"w1"}));
  CHECK(trace.levels[1].confined[2] == mask_of(inst, {"w2", "w3"}));
  CHECK(trace.levels[3].confined[2] == 0);

  // Levels are nested, their disputed sets disjoint, and the strongly
  // demanded contracts survive to every level reached.
  for (std::size_t k = 1; k < trace.levels.size(); ++k) {
    CHECK(trace.levels[k].active ==
          (trace.levels[k - 1].active & ~trace.levels[k - 1].partially_agreeable));
    CHECK((trace.levels[k].partially_agreeable & trace.levels[k - 1].partially_agreeable) == 0);
  }
  for (const auto& level : trace.levels) {
    CHECK(is_subset(trace.strongly_demanded, level.active));
  }
}

TEST_CASE("agreeing reports terminate immediately with the support") {
  const auto b = fixture_b();
  const auto reports = demand_all(b, PriceVector::zero(b));
  const auto trace = verify(reports, b);
  CHECK(trace.verdict == Verdict::kEquilibrium);
  CHECK(trace.terminal_level() == 1);
  CHECK(trace.support == mask_of(b, {"w"}));
  CHECK(trace.levels[0].partially_agreeable == 0);
}

TEST_CASE("agents demanding nothing yield the empty equilibrium") {
  const auto inst = MarketInstance::Builder()
                        .agent("x")
                        .agent("y")
                        .contract("w", {"x", "y"})
                        .value("x", {}, 0)
                        .value("x", {"w"}, -5)
                        .value("y", {}, 0)
                        .value("y", {"w"}, -5)
                        .build();
  const auto trace = verify(demand_all(inst, PriceVector::zero(inst)), inst);
  CHECK(trace.verdict == Verdict::kEquilibrium);
  CHECK(trace.terminal_level() == 1);
  CHECK(trace.support == 0);
}

TEST_CASE("equilibrium_outcome copies transfers from the prices") {
  const auto b = fixture_b();
  const auto prices = make_prices(b, {{"Ana", "w", 2}, {"Bob", "w", -2}});
  const auto trace = verify(demand_all(b, prices), b);
  REQUIRE(trace.verdict == Verdict::kEquilibrium);
  const auto outcome = equilibrium_outcome(trace, b, prices);
  REQUIRE(outcome.entries.size() == 1);
  CHECK(outcome.entries[0].contract == b.contract_index("w"));
  CHECK(outcome.entries[0].transfers == std::vector<std::int64_t>{2, -2});

  const auto c = fixture_c();
  const auto zero = PriceVector::zero(c);
  const auto trace_c = verify(demand_all(c, zero), c);
  REQUIRE(trace_c.verdict == Verdict::kEquilibrium);
  const auto outcome_c = equilibrium_outcome(trace_c, c, zero);
  CHECK(outcome_c.signed_contracts() == mask_of(c, {"u", "v"}));
  for (const auto& e : outcome_c.entries) {
    CHECK(e.transfers == std::vector<std::int64_t>{0, 0});
  }
}

TEST_CASE("equilibrium_outcome rejects non-equilibrium traces") {
  const auto inst = fixture_a_instance();
  const auto trace = verify(fixture_a_reports(inst), inst);
  CHECK_THROWS_AS(equilibrium_outcome(trace, inst, PriceVector::zero(inst)),
                  std::logic_error);
}

TEST_CASE("non-lattice reports surface as a gross-complements violation") {
  const auto inst = MarketInstance::Builder()
                        .agent("x")
                        .agent("y")
                        .agent("z")
                        .contract("u", {"x", "y"})
                        .contract("v", {"x", "y"})
                        .contract("m", {"y", "z"})
                        .synergy("x", {}, {})
                        .synergy("y", {}, {})
                        .synergy("z", {}, {})
                        .build();
  // x insists on u or v but never nothing; both are disputed away at level
  // 1, so level 2 leaves x without any demand set.
  const auto reports = io::parse_reports(R"({"reports": {
    "x": [["u"], ["v"]], "y": [["m"]], "z": [["m"]]
  }})",
                                         inst);
  CHECK_THROWS_AS(verify(reports, inst), GcViolation);
}

TEST_CASE("verify rejects incomplete report lists") {
  const auto b = fixture_b();
  std::vector<DemandReport> reports = demand_all(b, PriceVector::zero(b));
  reports.pop_back();
  CHECK_THROWS_AS(verify(reports, b), InputError);
}
