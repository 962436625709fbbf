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

#include <filesystem>
#include <string>
#include <vector>

#include "accord/auction.hpp"
#include "accord/demand.hpp"
#include "accord/market.hpp"
#include "accord/verify.hpp"

// JSON document formats. Parsing validates everything and reports schema
// violations with a path into the document; emission is canonical (declared
// orders, canonical subset order, two-space indent), so parse then emit is
// the identity on canonically formatted documents.
namespace accord::io {

MarketInstance parse_instance(const std::string& text);

/// Prices per contract per participant. A listed contract must price every
/// participant and sum to zero; an omitted contract is all-zero.
PriceVector parse_prices(const std::string& text, const MarketInstance& instance);

/// Signed contracts with zero-sum transfer maps.
Outcome parse_outcome(const std::string& text, const MarketInstance& instance);

/// Demand sets per agent, one report per agent, without optima (the format
/// carries reported sets only; `optimum` is left at zero).
std::vector<DemandReport> parse_reports(const std::string& text, const MarketInstance& instance);

std::string emit_instance(const MarketInstance& instance);
std::string emit_prices(const MarketInstance& instance, const PriceVector& prices);
std::string emit_outcome(const MarketInstance& instance, const Outcome& outcome);
std::string emit_report(const MarketInstance& instance, const DemandReport& report);
std::string emit_trace(const MarketInstance& instance, const VerificationTrace& trace);
std::string emit_trace(const MarketInstance& instance, const AuctionTrace& trace);

/// One CSV row per auction round: round, lyapunov, chains, and the sizes of
/// the per-level partially agreeable sets joined by ';'.
std::string emit_summary_csv(const AuctionTrace& trace);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

MarketInstance load_instance(const std::filesystem::path& path);
PriceVector load_prices(const std::filesystem::path& path, const MarketInstance& instance);
Outcome load_outcome(const std::filesystem::path& path, const MarketInstance& instance);
std::vector<DemandReport> load_reports(const std::filesystem::path& path,
                                       const MarketInstance& instance);

}  // namespace accord::io
