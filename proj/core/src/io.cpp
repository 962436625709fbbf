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

#include "accord/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "accord/errors.hpp"

namespace accord::io {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + ": missing key '" + key + "'");
  return *it;
}

void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
}

void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
}

std::string expect_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

// Keeps every downstream sum (valuations plus prices over at most a few
// dozen contracts and agents) comfortably inside int64.
constexpr std::int64_t kMaxMagnitude = 1'000'000'000'000;

std::int64_t expect_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v > kMaxMagnitude || v < -kMaxMagnitude) {
    throw InputError(path + ": magnitude exceeds " + std::to_string(kMaxMagnitude));
  }
  return v;
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end()) {
      throw InputError(path + ": unknown key '" + it.key() + "'");
    }
  }
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(expect_string(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json set_to_json(const MarketInstance& instance, Mask set) {
  Json out = Json::array();
  for (int c : members(set)) out.push_back(instance.contract_id(c));
  return out;
}

Json transfers_to_json(const MarketInstance& instance, int contract,
                       std::span<const std::int64_t> transfers) {
  Json out = Json::object();
  const auto parts = instance.participants(contract);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out[instance.agent_id(parts[k])] = transfers[k];
  }
  return out;
}

Json chain_to_json(const MarketInstance& instance, const ComplementsChain& chain) {
  Json out = Json::array();
  for (int l = 0; l < chain.length(); ++l) {
    out.push_back(instance.agent_id(chain.agents[static_cast<std::size_t>(l)]));
    out.push_back(instance.contract_id(chain.contracts[static_cast<std::size_t>(l)]));
  }
  out.push_back(instance.agent_id(chain.agents.back()));
  return out;
}

Json prices_to_json(const MarketInstance& instance, const PriceVector& prices) {
  Json out = Json::object();
  for (int c = 0; c < instance.contract_count(); ++c) {
    Json per_contract = Json::object();
    for (int a : instance.participants(c)) {
      per_contract[instance.agent_id(a)] = price_at(instance, prices, a, c);
    }
    out[instance.contract_id(c)] = std::move(per_contract);
  }
  return out;
}

Json verdict_to_json(const MarketInstance& instance, const VerificationTrace& trace) {
  Json out = Json::object();
  if (trace.verdict == Verdict::kEquilibrium) {
    out["kind"] = "equilibrium";
    out["support"] = set_to_json(instance, trace.support);
  } else {
    out["kind"] = "non_equilibrium";
    out["level"] = trace.terminal_level();
    out["witness"] = set_to_json(instance, trace.witness);
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

MarketInstance parse_instance(const std::string& text) {
  const Json root = parse_json(text);
  expect_object(root, "/");
  reject_unknown_keys(root, {"agents", "contracts", "valuations"}, "/");

  MarketInstance::Builder builder;
  for (const auto& id : string_list(field(root, "agents", "/"), "/agents")) {
    builder.agent(id);
  }

  const Json& contracts = field(root, "contracts", "/");
  expect_array(contracts, "/contracts");
  for (std::size_t i = 0; i < contracts.size(); ++i) {
    const std::string path = "/contracts[" + std::to_string(i) + "]";
    const Json& c = contracts[i];
    expect_object(c, path);
    reject_unknown_keys(c, {"id", "participants"}, path);
    builder.contract(expect_string(field(c, "id", path), path + "/id"),
                     string_list(field(c, "participants", path), path + "/participants"));
  }

  const Json& valuations = field(root, "valuations", "/");
  expect_object(valuations, "/valuations");
  for (auto it = valuations.begin(); it != valuations.end(); ++it) {
    const std::string path = "/valuations/" + it.key();
    const Json& v = it.value();
    expect_object(v, path);
    reject_unknown_keys(v, {"table", "synergy"}, path);
    const bool has_table = v.contains("table");
    const bool has_synergy = v.contains("synergy");
    if (has_table == has_synergy) {
      throw InputError(path + ": exactly one of 'table' or 'synergy' is required");
    }
    if (has_table) {
      const Json& table = v["table"];
      expect_array(table, path + "/table");
      for (std::size_t i = 0; i < table.size(); ++i) {
        const std::string epath = path + "/table[" + std::to_string(i) + "]";
        const Json& e = table[i];
        expect_object(e, epath);
        reject_unknown_keys(e, {"set", "value"}, epath);
        builder.value(it.key(), string_list(field(e, "set", epath), epath + "/set"),
                      expect_int(field(e, "value", epath), epath + "/value"));
      }
    } else {
      const Json& synergy = v["synergy"];
      const std::string spath = path + "/synergy";
      expect_object(synergy, spath);
      reject_unknown_keys(synergy, {"additive", "bonuses"}, spath);
      std::vector<std::pair<std::string, std::int64_t>> additive;
      if (synergy.contains("additive")) {
        const Json& add = synergy["additive"];
        expect_object(add, spath + "/additive");
        for (auto a = add.begin(); a != add.end(); ++a) {
          additive.emplace_back(a.key(), expect_int(a.value(), spath + "/additive/" + a.key()));
        }
      }
      std::vector<MarketInstance::Builder::BonusSpec> bonuses;
      if (synergy.contains("bonuses")) {
        const Json& bs = synergy["bonuses"];
        expect_array(bs, spath + "/bonuses");
        for (std::size_t i = 0; i < bs.size(); ++i) {
          const std::string bpath = spath + "/bonuses[" + std::to_string(i) + "]";
          const Json& b = bs[i];
          expect_object(b, bpath);
          reject_unknown_keys(b, {"set", "value"}, bpath);
          bonuses.push_back({string_list(field(b, "set", bpath), bpath + "/set"),
                             expect_int(field(b, "value", bpath), bpath + "/value")});
        }
      }
      builder.synergy(it.key(), std::move(additive), std::move(bonuses));
    }
  }

  return builder.build();
}

PriceVector parse_prices(const std::string& text, const MarketInstance& instance) {
  const Json root = parse_json(text);
  expect_object(root, "/");
  reject_unknown_keys(root, {"prices"}, "/");
  const Json& prices = field(root, "prices", "/");
  expect_object(prices, "/prices");

  PriceVector out = PriceVector::zero(instance);
  for (auto it = prices.begin(); it != prices.end(); ++it) {
    const std::string path = "/prices/" + it.key();
    const int c = instance.contract_index(it.key());
    const Json& per_contract = it.value();
    expect_object(per_contract, path);
    const auto parts = instance.participants(c);
    for (auto a = per_contract.begin(); a != per_contract.end(); ++a) {
      const int agent = instance.agent_index(a.key());
      if (!instance.participates(agent, c)) {
        throw InputError(path + ": agent '" + a.key() + "' does not participate in contract '" +
                         it.key() + "'");
      }
      set_price(instance, out, agent, c, expect_int(a.value(), path + "/" + a.key()));
    }
    for (int a : parts) {
      if (!per_contract.contains(instance.agent_id(a))) {
        throw InputError(path + ": missing price for participant '" + instance.agent_id(a) + "'");
      }
    }
  }

  const auto balance = validate_balanced(instance, out);
  if (!balance.ok()) {
    const auto& v = balance.violations.front();
    throw InputError("contract " + instance.contract_id(v.contract) + " unbalanced: sum " +
                     std::to_string(v.sum));
  }
  return out;
}

Outcome parse_outcome(const std::string& text, const MarketInstance& instance) {
  const Json root = parse_json(text);
  expect_object(root, "/");
  reject_unknown_keys(root, {"outcome"}, "/");
  const Json& outcome = field(root, "outcome", "/");
  expect_object(outcome, "/outcome");

  std::vector<Outcome::Entry> entries;
  for (auto it = outcome.begin(); it != outcome.end(); ++it) {
    const std::string path = "/outcome/" + it.key();
    const int c = instance.contract_index(it.key());
    const Json& per_contract = it.value();
    expect_object(per_contract, path);
    const auto parts = instance.participants(c);
    Outcome::Entry entry;
    entry.contract = c;
    entry.transfers.assign(parts.size(), 0);
    for (auto a = per_contract.begin(); a != per_contract.end(); ++a) {
      const int agent = instance.agent_index(a.key());
      const int pos = static_cast<int>(std::find(parts.begin(), parts.end(), agent) -
                                       parts.begin());
      if (pos == static_cast<int>(parts.size())) {
        throw InputError(path + ": agent '" + a.key() + "' does not participate in contract '" +
                         it.key() + "'");
      }
      entry.transfers[static_cast<std::size_t>(pos)] =
          expect_int(a.value(), path + "/" + a.key());
    }
    for (int a : parts) {
      if (!per_contract.contains(instance.agent_id(a))) {
        throw InputError(path + ": missing transfer for participant '" + instance.agent_id(a) +
                         "'");
      }
    }
    entries.push_back(std::move(entry));
  }
  return make_outcome(instance, std::move(entries));
}

std::vector<DemandReport> parse_reports(const std::string& text, const MarketInstance& instance) {
  const Json root = parse_json(text);
  expect_object(root, "/");
  reject_unknown_keys(root, {"reports"}, "/");
  const Json& reports = field(root, "reports", "/");
  expect_object(reports, "/reports");

  std::vector<DemandReport> out(static_cast<std::size_t>(instance.agent_count()));
  std::vector<bool> seen(static_cast<std::size_t>(instance.agent_count()), false);
  for (auto it = reports.begin(); it != reports.end(); ++it) {
    const std::string path = "/reports/" + it.key();
    const int agent = instance.agent_index(it.key());
    if (seen[static_cast<std::size_t>(agent)]) {
      throw InputError(path + ": duplicate report for agent '" + it.key() + "'");
    }
    seen[static_cast<std::size_t>(agent)] = true;

    const Json& sets = it.value();
    expect_array(sets, path);
    if (sets.empty()) throw InputError(path + ": a report needs at least one demand set");
    DemandReport report;
    report.agent = agent;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string spath = path + "[" + std::to_string(i) + "]";
      const auto ids = string_list(sets[i], spath);
      Mask set = 0;
      for (const auto& id : ids) {
        const int c = instance.contract_index(id);
        if (!instance.participates(agent, c)) {
          throw InputError(spath + ": agent '" + it.key() + "' does not participate in '" + id +
                           "'");
        }
        if (contains(set, c)) throw InputError(spath + ": contract '" + id + "' listed twice");
        set |= unit(c);
      }
      if (std::find(report.demand_sets.begin(), report.demand_sets.end(), set) !=
          report.demand_sets.end()) {
        throw InputError(spath + ": duplicate demand set");
      }
      report.demand_sets.push_back(set);
    }
    std::sort(report.demand_sets.begin(), report.demand_sets.end(), canonical_less);
    out[static_cast<std::size_t>(agent)] = std::move(report);
  }

  for (int a = 0; a < instance.agent_count(); ++a) {
    if (!seen[static_cast<std::size_t>(a)]) {
      throw InputError("/reports: missing report for agent '" + instance.agent_id(a) + "'");
    }
  }
  return out;
}

std::string emit_instance(const MarketInstance& instance) {
  Json root = Json::object();
  root["agents"] = Json::array();
  for (int a = 0; a < instance.agent_count(); ++a) root["agents"].push_back(instance.agent_id(a));

  root["contracts"] = Json::array();
  for (int c = 0; c < instance.contract_count(); ++c) {
    Json contract = Json::object();
    contract["id"] = instance.contract_id(c);
    Json parts = Json::array();
    for (int a : instance.participants(c)) parts.push_back(instance.agent_id(a));
    contract["participants"] = std::move(parts);
    root["contracts"].push_back(std::move(contract));
  }

  Json valuations = Json::object();
  for (int a = 0; a < instance.agent_count(); ++a) {
    Json v = Json::object();
    if (const auto& synergy = instance.synergy(a)) {
      Json additive = Json::object();
      const auto own = instance.agent_contracts(a);
      for (std::size_t k = 0; k < own.size(); ++k) {
        additive[instance.contract_id(own[k])] = synergy->additive[k];
      }
      Json bonuses = Json::array();
      for (const auto& b : synergy->bonuses) {
        Json bonus = Json::object();
        bonus["set"] = set_to_json(instance, b.set);
        bonus["value"] = b.value;
        bonuses.push_back(std::move(bonus));
      }
      Json s = Json::object();
      s["additive"] = std::move(additive);
      s["bonuses"] = std::move(bonuses);
      v["synergy"] = std::move(s);
    } else {
      const auto table = instance.table(a);
      std::vector<Mask> order;
      for (std::uint32_t local = 0; local < table.size(); ++local) {
        order.push_back(instance.local_to_global(a, local));
      }
      std::sort(order.begin(), order.end(), canonical_less);
      Json entries = Json::array();
      for (Mask set : order) {
        Json e = Json::object();
        e["set"] = set_to_json(instance, set);
        e["value"] = instance.value(a, set);
        entries.push_back(std::move(e));
      }
      v["table"] = std::move(entries);
    }
    valuations[instance.agent_id(a)] = std::move(v);
  }
  root["valuations"] = std::move(valuations);
  return dump(root);
}

std::string emit_prices(const MarketInstance& instance, const PriceVector& prices) {
  Json root = Json::object();
  root["prices"] = prices_to_json(instance, prices);
  return dump(root);
}

std::string emit_outcome(const MarketInstance& instance, const Outcome& outcome) {
  Json root = Json::object();
  Json body = Json::object();
  for (const auto& e : outcome.entries) {
    body[instance.contract_id(e.contract)] = transfers_to_json(instance, e.contract, e.transfers);
  }
  root["outcome"] = std::move(body);
  return dump(root);
}

std::string emit_report(const MarketInstance& instance, const DemandReport& report) {
  Json root = Json::object();
  root["agent"] = instance.agent_id(report.agent);
  root["optimum"] = report.optimum;
  Json sets = Json::array();
  for (Mask s : report.demand_sets) sets.push_back(set_to_json(instance, s));
  root["demand_sets"] = std::move(sets);
  return dump(root);
}

std::string emit_trace(const MarketInstance& instance, const VerificationTrace& trace) {
  Json root = Json::object();
  root["type"] = "verification";
  root["strongly_demanded"] = set_to_json(instance, trace.strongly_demanded);
  Json levels = Json::array();
  for (const auto& level : trace.levels) {
    Json l = Json::object();
    l["level"] = level.level;
    l["active"] = set_to_json(instance, level.active);
    Json confined = Json::object();
    for (int a = 0; a < instance.agent_count(); ++a) {
      confined[instance.agent_id(a)] =
          set_to_json(instance, level.confined[static_cast<std::size_t>(a)]);
    }
    l["confined"] = std::move(confined);
    l["partially_agreeable"] = set_to_json(instance, level.partially_agreeable);
    Json witnesses = Json::array();
    for (const auto& w : level.witnesses) {
      Json j = Json::object();
      j["contract"] = instance.contract_id(w.contract);
      j["demander"] = instance.agent_id(w.demander);
      j["refuser"] = instance.agent_id(w.refuser);
      witnesses.push_back(std::move(j));
    }
    l["witnesses"] = std::move(witnesses);
    levels.push_back(std::move(l));
  }
  root["levels"] = std::move(levels);
  root["verdict"] = verdict_to_json(instance, trace);
  return dump(root);
}

std::string emit_trace(const MarketInstance& instance, const AuctionTrace& trace) {
  Json root = Json::object();
  root["type"] = "auction";
  Json rounds = Json::array();
  for (const auto& round : trace.rounds) {
    Json r = Json::object();
    r["round"] = round.round;
    r["prices"] = prices_to_json(instance, round.prices);
    Json reports = Json::array();
    for (const auto& summary : round.reports) {
      Json s = Json::object();
      s["agent"] = instance.agent_id(summary.agent);
      s["demand_sets"] = summary.demand_set_count;
      s["optimum"] = summary.optimum;
      reports.push_back(std::move(s));
    }
    r["reports"] = std::move(reports);

    Json verification = Json::object();
    const auto& v = round.verification;
    verification["kind"] =
        v.verdict == Verdict::kEquilibrium ? "equilibrium" : "non_equilibrium";
    verification["level"] = v.terminal_level;
    verification["strongly_demanded"] = set_to_json(instance, v.strongly_demanded);
    Json g_levels = Json::array();
    for (Mask g : v.partially_agreeable) g_levels.push_back(set_to_json(instance, g));
    verification["partially_agreeable"] = std::move(g_levels);
    if (v.verdict == Verdict::kEquilibrium) {
      verification["support"] = set_to_json(instance, v.support);
    } else {
      verification["witness"] = set_to_json(instance, v.witness);
    }
    r["verification"] = std::move(verification);

    Json chains = Json::array();
    for (const auto& chain : round.chains) chains.push_back(chain_to_json(instance, chain));
    r["chains"] = std::move(chains);
    r["lyapunov"] = round.lyapunov;
    rounds.push_back(std::move(r));
  }
  root["rounds"] = std::move(rounds);
  root["total_rounds"] = trace.total_rounds;
  Json outcome = Json::object();
  for (const auto& e : trace.result.entries) {
    outcome[instance.contract_id(e.contract)] =
        transfers_to_json(instance, e.contract, e.transfers);
  }
  root["outcome"] = std::move(outcome);
  return dump(root);
}

std::string emit_summary_csv(const AuctionTrace& trace) {
  std::ostringstream out;
  out << "round,lyapunov,chains,g_sizes\n";
  for (const auto& round : trace.rounds) {
    out << round.round << ',' << round.lyapunov << ',' << round.chains.size() << ',';
    for (std::size_t k = 0; k < round.verification.partially_agreeable.size(); ++k) {
      if (k > 0) out << ';';
      out << set_size(round.verification.partially_agreeable[k]);
    }
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

namespace {
template <typename Parse>
auto with_context(const std::filesystem::path& path, Parse parse) {
  try {
    return parse();
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}
}  // namespace

MarketInstance load_instance(const std::filesystem::path& path) {
  return with_context(path, [&] { return parse_instance(read_file(path)); });
}

PriceVector load_prices(const std::filesystem::path& path, const MarketInstance& instance) {
  return with_context(path, [&] { return parse_prices(read_file(path), instance); });
}

Outcome load_outcome(const std::filesystem::path& path, const MarketInstance& instance) {
  return with_context(path, [&] { return parse_outcome(read_file(path), instance); });
}

std::vector<DemandReport> load_reports(const std::filesystem::path& path,
                                       const MarketInstance& instance) {
  return with_context(path, [&] { return parse_reports(read_file(path), instance); });
}

}  // namespace accord::io
