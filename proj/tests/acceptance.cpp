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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "accord/auction.hpp"
#include "accord/chain.hpp"
#include "accord/generator.hpp"
#include "accord/io.hpp"
#include "accord/oracles.hpp"
#include "accord/random.hpp"
#include "support/fixtures.hpp"

using namespace accord;
using namespace accord::testing;

namespace {

struct Check {
  int total = 0;
  int failed = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

GenParams suite_params(std::uint64_t index) {
  SplitMix64 mix(0xACC0FD ^ (index * 0x9E3779B97F4A7C15ull));
  GenParams params;
  params.agents = 2 + static_cast<int>(mix.below(3));       // 2..4
  params.contracts = 2 + static_cast<int>(mix.below(5));    // 2..6
  params.max_participants = 2 + static_cast<int>(mix.below(3));
  params.value_lo = -10;
  params.value_hi = 10;
  params.synergy_density = static_cast<double>(mix.below(7)) / 10.0;  // 0.0..0.6
  params.seed = 0xFEED0000 + index;
  return params;
}

// --- criterion 1 -----------------------------------------------------------

void example1_verification(Check& check) {
  const auto inst = fixture_a_instance();
  const auto reports = fixture_a_reports(inst);
  const auto trace = verify(reports, inst);

  check.expect(trace.strongly_demanded == mask_of(inst, {"w1", "w2"}), "H must be {w1, w2}");
  check.expect(trace.verdict == Verdict::kNonEquilibrium, "verdict must be non-equilibrium");
  check.expect(trace.terminal_level() == 4, "termination must happen at step 4");
  check.expect(trace.witness == mask_of(inst, {"w2"}), "witness must be {w2}");
  const std::vector<std::vector<std::string>> expected_g = {
      {"w5"}, {"w4"}, {"w3"}, {"w2"}};
  check.expect(trace.levels.size() == expected_g.size(), "exactly four levels");
  for (std::size_t k = 0; k < trace.levels.size() && k < expected_g.size(); ++k) {
    check.expect(trace.levels[k].partially_agreeable == mask_of(inst, expected_g[k]),
                 "level " + std::to_string(k + 1) + " disputed set");
  }
}

// --- criterion 2 -----------------------------------------------------------

void example1_chain(Check& check) {
  const auto inst = fixture_a_instance();
  const auto reports = fixture_a_reports(inst);
  const auto trace = verify(reports, inst);
  const auto chain =
      find_chain(trace, reports, inst, std::vector<char>(static_cast<std::size_t>(3), 0));
  check.expect(chain.has_value(), "a chain must exist");
  if (!chain) return;

  std::vector<std::string> flat;
  for (int l = 0; l < chain->length(); ++l) {
    flat.push_back(inst.agent_id(chain->agents[static_cast<std::size_t>(l)]));
    flat.push_back(inst.contract_id(chain->contracts[static_cast<std::size_t>(l)]));
  }
  flat.push_back(inst.agent_id(chain->agents.back()));
  const std::vector<std::string> expected = {"i1", "w5", "i2", "w4", "i1",
                                             "w3", "i3", "w2", "i1"};
  check.expect(flat == expected, "chain must be i1 w5 i2 w4 i1 w3 i3 w2 i1");
}

// --- criterion 3 -----------------------------------------------------------

void ana_bob_end_to_end(Check& check) {
  const auto b = fixture_b();
  const auto trace = run_auction(b, make_prices(b, {{"Ana", "w", 3}, {"Bob", "w", -3}}));

  check.expect(trace.total_rounds == 2, "two rounds");
  check.expect(trace.rounds.size() == 2 && trace.rounds[0].lyapunov == 6 &&
                   trace.rounds[1].lyapunov == 5,
               "lyapunov sequence 6, 5");
  check.expect(trace.result.entries.size() == 1, "one signed contract");
  if (trace.result.entries.size() == 1) {
    const auto& transfers = trace.result.entries[0].transfers;
    check.expect(transfers == std::vector<std::int64_t>{2, -2}, "transfers (2, -2)");
    check.expect(transfers[0] <= 2 && transfers[1] <= 3 && transfers[0] + transfers[1] == 0,
                 "transfers inside the stable set");
  }
  check.expect(oracles::is_stable(b, trace.result).ok(), "oracle confirms stability");
  for (const auto& round : trace.rounds) {
    check.expect(validate_balanced(b, round.prices).ok(), "balanced prices every round");
  }
}

// --- criteria 4 and 7 ------------------------------------------------------

void auction_property_suite(Check& check, Check& balance_check) {
  SplitMix64 rng(2026);
  for (std::uint64_t index = 0; index < 500; ++index) {
    const auto inst = generate(suite_params(index));
    const auto initial = random_balanced_prices(inst, rng, 10);
    const auto trace = run_auction(inst, initial);
    const auto efficient = oracles::efficient_sets(inst);

    check.expect(trace.total_rounds - 1 <= trace.rounds[0].lyapunov - efficient.max_value,
                 "instance " + std::to_string(index) + ": round bound exceeded");
    check.expect(trace.result.signed_contracts() == efficient.largest,
                 "instance " + std::to_string(index) + ": signed set is not the largest");
    check.expect(
        oracles::equilibrium_support(inst, trace.rounds.back().prices).has_value(),
        "instance " + std::to_string(index) + ": final prices are not an equilibrium");
    for (std::size_t r = 0; r + 1 < trace.rounds.size(); ++r) {
      check.expect(trace.rounds[r].lyapunov -
                           static_cast<std::int64_t>(trace.rounds[r].chains.size()) ==
                       trace.rounds[r + 1].lyapunov,
                   "instance " + std::to_string(index) + ": drop != chain count");
    }
    for (const auto& round : trace.rounds) {
      balance_check.expect(validate_balanced(inst, round.prices).ok(),
                           "instance " + std::to_string(index) + ": unbalanced round prices");
    }
  }
}

// --- criterion 5 -----------------------------------------------------------

void demand_monotonicity_suite(Check& check) {
  SplitMix64 rng(515);

  // Forward direction on generated (hence supermodular) valuations.
  for (std::uint64_t index = 0; index < 25; ++index) {
    const auto inst = generate(suite_params(1000 + index));
    for (int a = 0; a < inst.agent_count(); ++a) {
      check.expect(!oracles::supermodularity_violation(inst, a),
                   "generated valuation must be supermodular");
      const auto m = inst.agent_contracts(a).size();
      for (int pair = 0; pair < 100; ++pair) {
        // coordinates in [-15, 15], componentwise ordered, frequently equal
        std::vector<std::int64_t> low(m), high(m);
        for (std::size_t k = 0; k < m; ++k) {
          const std::int64_t a1 = rng.range(-15, 15);
          const std::int64_t a2 = rng.below(4) == 0 ? a1 : rng.range(-15, 15);
          high[k] = a1 > a2 ? a1 : a2;
          low[k] = a1 > a2 ? a2 : a1;
        }
        check.expect(!oracles::antitone_violation(inst, a, high, low),
                     "antitone check failed on a supermodular valuation");
        check.expect(!oracles::gc_lowering_violation(inst, a, high, low),
                     "lowering check failed on a supermodular valuation");
      }
    }
  }

  // Converse at witness level on hand-mutated tables.
  int mutated_done = 0;
  for (std::uint64_t index = 0; mutated_done < 50; ++index) {
    const auto base = generate(suite_params(2000 + index));
    int agent = -1;
    for (int a = 0; a < base.agent_count(); ++a) {
      if (base.agent_contracts(a).size() >= 2) {
        agent = a;
        break;
      }
    }
    if (agent < 0) continue;

    const int m = static_cast<int>(base.agent_contracts(agent).size());
    std::vector<std::int64_t> table(base.table(agent).begin(), base.table(agent).end());
    const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
    if (y >= x) ++y;
    std::uint32_t sub = static_cast<std::uint32_t>(rng.below(table.size()));
    sub &= ~(1u << x);
    sub &= ~(1u << y);
    const std::uint32_t with_x = sub | (1u << x);
    const std::uint32_t with_y = sub | (1u << y);
    table[with_x] = table[with_x | (1u << y)] + table[sub] - table[with_y] + 1 +
                    static_cast<std::int64_t>(rng.below(5));
    const auto mutated = with_table(base, agent, table);

    const auto witness = oracles::supermodularity_violation(mutated, agent);
    check.expect(witness.has_value(), "mutated table must fail the supermodularity check");
    if (witness) {
      const auto pair = oracles::antitone_counterexample(mutated, agent, *witness);
      check.expect(
          oracles::antitone_violation(mutated, agent, pair.high, pair.low).has_value(),
          "constructed prices must defeat the antitone check");
    }
    ++mutated_done;
  }
}

// --- criterion 6 -----------------------------------------------------------

void verifier_oracle_agreement(Check& check) {
  SplitMix64 rng(606);
  for (std::uint64_t index = 0; index < 200; ++index) {
    const auto inst = generate(suite_params(3000 + index));
    const auto efficient = oracles::efficient_sets(inst);
    for (int round = 0; round < 10; ++round) {
      const auto prices = random_balanced_prices(inst, rng, 10);
      const auto reports = demand_all(inst, prices);
      const auto trace = verify(reports, inst);
      const auto support = oracles::equilibrium_support(inst, prices);

      check.expect((trace.verdict == Verdict::kEquilibrium) == support.has_value(),
                   "instance " + std::to_string(index) + ": verdict disagrees with the oracle");
      if (trace.verdict == Verdict::kEquilibrium && support) {
        check.expect(trace.support == efficient.largest,
                     "instance " + std::to_string(index) + ": support is not the largest");
        check.expect(lyapunov(inst, prices) == efficient.max_value,
                     "instance " + std::to_string(index) + ": potential above the maximum");
        // Every equilibrium support avoids every disputed level; under
        // gross complements all maximizers are supports here.
        for (const auto& level : trace.levels) {
          check.expect((*support & level.partially_agreeable) == 0,
                       "oracle support meets a disputed set");
          for (Mask maximizer : efficient.maximizers) {
            check.expect((maximizer & level.partially_agreeable) == 0,
                         "a maximizer meets a disputed set");
          }
        }
      }
    }
  }
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  Check balance_check;  // criterion 7 accumulates across criteria 3 and 4

  std::vector<Criterion> criteria = {
      {1, "Example-1 verification trace", 1.0, example1_verification},
      {2, "Example-1 complements chain", 0.0, example1_chain},
      {3, "Ana/Bob auction end to end",
       0.0,
       [&](Check& c) {
         ana_bob_end_to_end(c);
         // fold this run's balance checks into criterion 7 as well
         const auto b = fixture_b();
         const auto trace = run_auction(b, make_prices(b, {{"Ana", "w", 3}, {"Bob", "w", -3}}));
         for (const auto& round : trace.rounds) {
           balance_check.expect(validate_balanced(b, round.prices).ok(),
                                "Ana/Bob round prices unbalanced");
         }
       }},
      {4, "termination and efficiency on 500 generated markets", 60.0,
       [&](Check& c) { auction_property_suite(c, balance_check); }},
      {5, "supermodularity vs demand monotonicity", 0.0, demand_monotonicity_suite},
      {6, "verifier agrees with the equilibrium oracle", 0.0, verifier_oracle_agreement},
      {7, "balance and integrality of every intermediate price vector", 0.0,
       [&](Check& c) {
         c.total += balance_check.total;
         c.failed += balance_check.failed;
         if (c.first_failure.empty()) c.first_failure = balance_check.first_failure;
         c.expect(balance_check.total > 0, "criteria 3 and 4 must feed balance checks");
       }},
  };

  int failed_criteria = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_seconds > 0.0) {
      check.expect(seconds < criterion.time_limit_seconds,
                   "runtime " + std::to_string(seconds) + "s exceeds " +
                       std::to_string(criterion.time_limit_seconds) + "s");
    }

    const bool pass = check.failed == 0;
    failed_criteria += pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%d checks, %.2fs)%s%s\n", pass ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), check.total, seconds,
                pass ? "" : " first failure: ", pass ? "" : check.first_failure.c_str());
  }

  std::printf("acceptance: %d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed_criteria, criteria.size());
  return failed_criteria == 0 ? 0 : 1;
}
