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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "accord/auction.hpp"
#include "accord/errors.hpp"
#include "accord/generator.hpp"
#include "accord/io.hpp"
#include "accord/oracles.hpp"

namespace {

// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
// error, 3 gross-complements precondition violation.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kPrecondition = 3;

struct SolveArgs {
  std::string instance_path;
  std::string initial_path;
  std::string trace_path;
  std::string summary_path;
};

int run_solve(const SolveArgs& args) {
  const auto instance = accord::io::load_instance(args.instance_path);
  auto prices = args.initial_path.empty()
                    ? accord::PriceVector::zero(instance)
                    : accord::io::load_prices(args.initial_path, instance);
  const auto trace = accord::run_auction(instance, prices);
  std::cout << accord::io::emit_outcome(instance, trace.result);
  if (!args.trace_path.empty()) {
    accord::io::write_file(args.trace_path, accord::io::emit_trace(instance, trace));
  }
  if (!args.summary_path.empty()) {
    accord::io::write_file(args.summary_path, accord::io::emit_summary_csv(trace));
  }
  return kOk;
}

struct VerifyArgs {
  std::string instance_path;
  std::string prices_path;
  std::string reports_path;
  std::string trace_path;
};

int run_verify(const VerifyArgs& args) {
  const auto instance = accord::io::load_instance(args.instance_path);
  if (args.prices_path.empty() == args.reports_path.empty()) {
    throw accord::InputError("verify needs either a prices file or --reports");
  }

  std::vector<accord::DemandReport> reports;
  std::optional<accord::PriceVector> prices;
  if (!args.reports_path.empty()) {
    reports = accord::io::load_reports(args.reports_path, instance);
  } else {
    for (int a = 0; a < instance.agent_count(); ++a) {
      if (accord::oracles::supermodularity_violation(instance, a)) {
        throw accord::GcViolation("valuation of agent '" + instance.agent_id(a) +
                                  "' is not supermodular; the verification procedure needs "
                                  "gross complements");
      }
    }
    prices = accord::io::load_prices(args.prices_path, instance);
    reports = accord::demand_all(instance, *prices);
  }

  const auto trace = accord::verify(reports, instance);
  std::cout << accord::io::emit_trace(instance, trace);
  if (!args.trace_path.empty()) {
    accord::io::write_file(args.trace_path, accord::io::emit_trace(instance, trace));
  }
  return trace.verdict == accord::Verdict::kEquilibrium ? kOk : kNegative;
}

int run_demand(const std::string& instance_path, const std::string& prices_path,
               const std::string& agent_id) {
  const auto instance = accord::io::load_instance(instance_path);
  const auto prices = accord::io::load_prices(prices_path, instance);
  const auto report = accord::demand(instance, instance.agent_index(agent_id), prices);
  std::cout << accord::io::emit_report(instance, report);
  return kOk;
}

int run_oracle_efficient(const std::string& instance_path) {
  const auto instance = accord::io::load_instance(instance_path);
  const auto result = accord::oracles::efficient_sets(instance);
  std::cout << "max_value " << result.max_value << "\n";
  std::cout << "largest " << instance.render(result.largest) << "\n";
  for (accord::Mask m : result.maximizers) {
    std::cout << "maximizer " << instance.render(m) << "\n";
  }
  return kOk;
}

int run_oracle_equilibrium(const std::string& instance_path, const std::string& prices_path) {
  const auto instance = accord::io::load_instance(instance_path);
  const auto prices = accord::io::load_prices(prices_path, instance);
  if (const auto support = accord::oracles::equilibrium_support(instance, prices)) {
    std::cout << "equilibrium, support " << instance.render(*support) << "\n";
    return kOk;
  }
  std::cout << "no equilibrium at these prices\n";
  return kNegative;
}

int run_oracle_stable(const std::string& instance_path, const std::string& outcome_path) {
  const auto instance = accord::io::load_instance(instance_path);
  const auto outcome = accord::io::load_outcome(outcome_path, instance);
  const auto report = accord::oracles::is_stable(instance, outcome);
  if (report.ok()) {
    std::cout << "stable\n";
    return kOk;
  }
  for (const auto& f : report.failures) std::cout << "not stable: " << f.detail << "\n";
  return kNegative;
}

int run_oracle_supermodular(const std::string& instance_path) {
  const auto instance = accord::io::load_instance(instance_path);
  bool all_ok = true;
  for (int a = 0; a < instance.agent_count(); ++a) {
    if (const auto witness = accord::oracles::supermodularity_violation(instance, a)) {
      all_ok = false;
      std::cout << "agent " << instance.agent_id(a) << ": not supermodular, witness "
                << instance.render(witness->phi) << " / " << instance.render(witness->psi)
                << "\n";
    } else {
      std::cout << "agent " << instance.agent_id(a) << ": supermodular\n";
    }
  }
  return all_ok ? kOk : kNegative;
}

struct GenArgs {
  accord::GenParams params;
  std::string value_range = "-10:10";
  std::string out_path;
};

int run_gen(GenArgs& args) {
  const auto colon = args.value_range.find(':');
  if (colon == std::string::npos) {
    throw accord::InputError("--value-range expects LO:HI");
  }
  try {
    args.params.value_lo = std::stoll(args.value_range.substr(0, colon));
    args.params.value_hi = std::stoll(args.value_range.substr(colon + 1));
  } catch (const std::exception&) {
    throw accord::InputError("--value-range expects integers LO:HI");
  }
  const auto instance = accord::generate(args.params);
  accord::io::write_file(args.out_path, accord::io::emit_instance(instance));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accord: a dynamic auction engine for multilateral collaboration markets"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "run the auction to a stable outcome");
  solve->add_option("instance", solve_args.instance_path, "instance file")->required();
  solve->add_option("--initial", solve_args.initial_path, "initial balanced price file");
  solve->add_option("--trace", solve_args.trace_path, "write the full auction trace (JSON)");
  solve->add_option("--summary", solve_args.summary_path, "write a per-round CSV summary");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check whether prices admit an equilibrium");
  verify->add_option("instance", verify_args.instance_path, "instance file")->required();
  verify->add_option("prices", verify_args.prices_path, "balanced price file");
  verify->add_option("--reports", verify_args.reports_path,
                     "verify reported demand sets instead of computing them from valuations");
  verify->add_option("--trace", verify_args.trace_path, "write the verification trace (JSON)");

  std::string demand_instance, demand_prices, demand_agent;
  auto* demand = app.add_subcommand("demand", "print one agent's demand correspondence");
  demand->add_option("instance", demand_instance, "instance file")->required();
  demand->add_option("prices", demand_prices, "balanced price file")->required();
  demand->add_option("--agent", demand_agent, "agent id")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force ground-truth checks");
  oracle->require_subcommand(1);
  std::string oracle_instance, oracle_prices, oracle_outcome;
  auto* efficient = oracle->add_subcommand("efficient", "enumerate efficient contract sets");
  efficient->add_option("instance", oracle_instance, "instance file")->required();
  auto* equilibrium = oracle->add_subcommand("equilibrium", "find a supporting contract set");
  equilibrium->add_option("instance", oracle_instance, "instance file")->required();
  equilibrium->add_option("prices", oracle_prices, "balanced price file")->required();
  auto* stable = oracle->add_subcommand("stable", "certify stability of an outcome");
  stable->add_option("instance", oracle_instance, "instance file")->required();
  stable->add_option("outcome", oracle_outcome, "outcome file")->required();
  auto* supermodular = oracle->add_subcommand("supermodular", "check every agent's valuation");
  supermodular->add_option("instance", oracle_instance, "instance file")->required();

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a random gross-complements instance");
  gen->add_option("--agents", gen_args.params.agents, "agent count")->required();
  gen->add_option("--contracts", gen_args.params.contracts, "contract count")->required();
  gen->add_option("--seed", gen_args.params.seed, "PRNG seed")->required();
  gen->add_option("--max-participants", gen_args.params.max_participants,
                  "most participants per contract");
  gen->add_option("--value-range", gen_args.value_range, "additive value range LO:HI");
  gen->add_option("--synergy-density", gen_args.params.synergy_density,
                  "fraction of contract pairs receiving a bonus");
  gen->add_option("-o,--out", gen_args.out_path, "output instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (demand->parsed()) return run_demand(demand_instance, demand_prices, demand_agent);
    if (oracle->parsed()) {
      if (efficient->parsed()) return run_oracle_efficient(oracle_instance);
      if (equilibrium->parsed()) return run_oracle_equilibrium(oracle_instance, oracle_prices);
      if (stable->parsed()) return run_oracle_stable(oracle_instance, oracle_outcome);
      if (supermodular->parsed()) return run_oracle_supermodular(oracle_instance);
    }
    if (gen->parsed()) return run_gen(gen_args);
  } catch (const accord::GcViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const accord::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
