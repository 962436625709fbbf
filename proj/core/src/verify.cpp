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

#include "accord/verify.hpp"

#include <stdexcept>
#include <string>

#include "accord/errors.hpp"

namespace accord {

namespace {

void check_reports(std::span<const DemandReport> reports, const MarketInstance& instance) {
  if (static_cast<int>(reports.size()) != instance.agent_count()) {
    throw InputError("expected one demand report per agent");
  }
  for (int a = 0; a < instance.agent_count(); ++a) {
    const auto& r = reports[static_cast<std::size_t>(a)];
    if (r.agent != a) throw InputError("demand reports are not in agent order");
    if (r.demand_sets.empty()) {
      throw InputError("agent '" + instance.agent_id(a) + "' reported no demand set");
    }
    for (Mask s : r.demand_sets) {
      if (!is_subset(s, instance.agent_mask(a))) {
        throw InputError("agent '" + instance.agent_id(a) + "' reported the set " +
                         instance.render(s) + " outside her contract set");
      }
    }
  }
}

}  // namespace

Mask strongly_demanded(std::span<const DemandReport> reports, const MarketInstance& instance) {
  check_reports(reports, instance);
  Mask h = 0;
  for (const auto& r : reports) {
    h |= largest_and_smallest(r).second;
  }
  return h;
}

VerificationTrace verify(std::span<const DemandReport> reports, const MarketInstance& instance) {
  check_reports(reports, instance);

  VerificationTrace trace;
  trace.strongly_demanded = strongly_demanded(reports, instance);

  Mask active = instance.all_contracts();
  const int max_levels = instance.contract_count() + 1;
  for (int level = 1; level <= max_levels; ++level) {
    VerificationLevel record;
    record.level = level;
    record.active = active;
    record.confined.reserve(reports.size());
    for (int a = 0; a < instance.agent_count(); ++a) {
      auto confined = try_confined_largest(reports[static_cast<std::size_t>(a)], active);
      if (!confined) {
        throw GcViolation("reports violate gross complementarity: agent '" +
                          instance.agent_id(a) + "' has no demand set inside the level-" +
                          std::to_string(level) + " contract set " + instance.render(active));
      }
      record.confined.push_back(*confined);
    }

    for (int c : members(active)) {
      int demander = -1;
      int refuser = -1;
      for (int a : instance.participants(c)) {
        const bool in = contains(record.confined[static_cast<std::size_t>(a)], c);
        if (in && demander < 0) demander = a;
        if (!in && refuser < 0) refuser = a;
        if (demander >= 0 && refuser >= 0) break;
      }
      if (demander >= 0 && refuser >= 0) {
        record.partially_agreeable |= unit(c);
        record.witnesses.push_back({c, demander, refuser});
      }
    }

    const Mask disputed = record.partially_agreeable;
    trace.levels.push_back(std::move(record));

    if (disputed == 0) {
      trace.verdict = Verdict::kEquilibrium;
      Mask support = 0;
      for (Mask d : trace.levels.back().confined) support |= d;
      trace.support = support;
      return trace;
    }
    if ((disputed & trace.strongly_demanded) != 0) {
      trace.verdict = Verdict::kNonEquilibrium;
      trace.witness = disputed & trace.strongly_demanded;
      return trace;
    }
    active &= ~disputed;
  }

  throw std::logic_error("verification did not terminate within the level bound");
}

Outcome equilibrium_outcome(const VerificationTrace& trace, const MarketInstance& instance,
                            const PriceVector& prices) {
  if (trace.verdict != Verdict::kEquilibrium) {
    throw std::logic_error("equilibrium_outcome called on a non-equilibrium trace");
  }
  std::vector<Outcome::Entry> entries;
  for (int c : members(trace.support)) {
    Outcome::Entry e;
    e.contract = c;
    for (int a : instance.participants(c)) {
      e.transfers.push_back(price_at(instance, prices, a, c));
    }
    entries.push_back(std::move(e));
  }
  return make_outcome(instance, std::move(entries));
}

}  // namespace accord
