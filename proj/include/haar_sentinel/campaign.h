// Copyright 2026 The haar-sentinel Authors
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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haar_sentinel/io.h"
#include "haar_sentinel/verify.h"

namespace haar_sentinel {

/// Process exit codes of the verify command.
inline constexpr int kExitAllCompatible = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitTermBudget = 3;
inline constexpr int kExitUnsupportedDimension = 4;
inline constexpr int kExitIncompatible = 10;
inline constexpr int kExitInconclusive = 11;

struct CampaignConfig {
  /// Diagonal of the observable in the reference basis.
  EigenAssignment observable = number_operator_diagonal(1);
  EnsembleSpec ensemble;
  std::vector<Tier> tiers = {Tier::observable};
  std::vector<int> orders = {1};
  double epsilon = 0.01;
  std::size_t samples = 10000;
  std::size_t permutations = 20;
  std::size_t bases = 3;
  std::uint64_t seed = 0;
  std::uint64_t term_budget = kDefaultTermBudget;
  std::string output;

  /// Throws ConfigError on inconsistent budgets or dimensions and
  /// UnsupportedDimension when the MUB tier is requested for an unsupported N.
  void validate() const;
  Spectrum spectrum() const { return collapse(observable); }
};

/// "3", "1..4" or "1,2,5".
std::vector<int> parse_orders(const std::string& text);

/// Reads a campaign file. "spectrum" and "ensemble" may be inline objects or
/// paths relative to `base_dir`; "seed" overrides the ensemble's seed.
CampaignConfig campaign_from_json(const io::json& j,
                                  const std::filesystem::path& base_dir);

/// "number:<n>" (popcount layout) or a path to a spectrum JSON file.
EigenAssignment load_observable(const std::string& reference,
                                const std::filesystem::path& base_dir = {});

/// One report per (tier, t), tiers in configuration order.
std::vector<RandomnessReport> run_campaign(const CampaignConfig& config);

/// 0 when every verdict is compatible, 10 if any is incompatible, 11 if some
/// are inconclusive and none incompatible.
int exit_code_for(std::span<const RandomnessReport> reports);

/// Deterministic part of the report document: configuration echo, reports and
/// summary. The "meta" block (timestamp, host, threads) is added separately.
io::json campaign_document(const CampaignConfig& config,
                           std::span<const RandomnessReport> reports);
io::json campaign_meta(int threads);

std::string human_summary(std::span<const RandomnessReport> reports);

}  // namespace haar_sentinel
