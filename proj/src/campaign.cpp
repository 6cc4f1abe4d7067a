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

#include "haar_sentinel/campaign.h"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "haar_sentinel/errors.h"
#include "haar_sentinel/mub.h"

namespace haar_sentinel {

namespace {

int parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("'" + text + "' is not an integer");
  }
}

std::size_t count_field(const io::json& j, std::initializer_list<const char*> keys,
                        std::size_t fallback) {
  for (const char* key : keys) {
    if (j.contains(key)) {
      const auto& v = j.at(key);
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError(std::string("campaign: '") + key +
                          "' must be a non-negative integer");
      }
      return v.get<std::size_t>();
    }
  }
  return fallback;
}

}  // namespace

void CampaignConfig::validate() const {
  if (ensemble.dimension != observable.dimension()) {
    throw ConfigError("campaign: ensemble dimension " +
                      std::to_string(ensemble.dimension) +
                      " != spectrum dimension " +
                      std::to_string(observable.dimension()));
  }
  if (tiers.empty()) throw ConfigError("campaign: no tiers selected");
  if (orders.empty()) throw ConfigError("campaign: no moment orders selected");
  for (int t : orders) {
    if (t < 1) throw ConfigError("campaign: moment orders must be >= 1");
  }
  if (!(epsilon > 0.0)) throw ConfigError("campaign: epsilon must be > 0");
  if (samples < 2) throw ConfigError("campaign: M must be >= 2");
  for (Tier tier : tiers) {
    if (tier != Tier::observable && permutations < 1) {
      throw ConfigError("campaign: M_perm must be >= 1");
    }
    if (tier == Tier::mub) {
      if (bases < 1) throw ConfigError("campaign: M_u must be >= 1");
      if (!mub_dimension_supported(observable.dimension())) {
        throw UnsupportedDimension(
            "campaign: no complete MUB set available for N = " +
            std::to_string(observable.dimension()));
      }
    }
  }
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> orders;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const int lo = parse_int(text.substr(0, range));
    const int hi = parse_int(text.substr(range + 2));
    if (lo > hi) throw ConfigError("order range '" + text + "' is empty");
    for (int t = lo; t <= hi; ++t) orders.push_back(t);
    return orders;
  }
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) orders.push_back(parse_int(token));
  if (orders.empty()) throw ConfigError("no moment orders in '" + text + "'");
  return orders;
}

EigenAssignment load_observable(const std::string& reference,
                                const std::filesystem::path& base_dir) {
  constexpr std::string_view prefix = "number:";
  if (reference.rfind(prefix, 0) == 0) {
    try {
      return number_operator_diagonal(parse_int(reference.substr(prefix.size())));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  std::filesystem::path path(reference);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return io::observable_from_json(io::read_json_file(path));
}

CampaignConfig campaign_from_json(const io::json& j,
                                  const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("campaign: expected a JSON object");
  CampaignConfig config;

  if (!j.contains("spectrum")) throw ConfigError("campaign: missing 'spectrum'");
  const auto& spectrum = j.at("spectrum");
  config.observable = spectrum.is_string()
                          ? load_observable(spectrum.get<std::string>(), base_dir)
                          : io::observable_from_json(spectrum);

  if (!j.contains("ensemble")) throw ConfigError("campaign: missing 'ensemble'");
  const auto& ensemble = j.at("ensemble");
  if (ensemble.is_string()) {
    std::filesystem::path path(ensemble.get<std::string>());
    if (path.is_relative()) path = base_dir / path;
    config.ensemble = io::ensemble_from_json(io::read_json_file(path));
  } else {
    config.ensemble = io::ensemble_from_json(ensemble);
  }

  if (j.contains("tiers")) {
    config.tiers.clear();
    try {
      for (const auto& tier : j.at("tiers")) {
        config.tiers.push_back(tier_from_string(tier.get<std::string>()));
      }
    } catch (const std::exception& e) {
      throw ConfigError(std::string("campaign: tiers: ") + e.what());
    }
  }
  if (j.contains("t")) {
    const auto& t = j.at("t");
    if (t.is_number_integer()) {
      config.orders = {t.get<int>()};
    } else if (t.is_string()) {
      config.orders = parse_orders(t.get<std::string>());
    } else if (t.is_array()) {
      config.orders.clear();
      for (const auto& v : t) {
        if (!v.is_number_integer()) throw ConfigError("campaign: 't' entries must be integers");
        config.orders.push_back(v.get<int>());
      }
    } else {
      throw ConfigError("campaign: 't' must be an integer, range string or array");
    }
  }
  if (j.contains("epsilon")) {
    if (!j.at("epsilon").is_number()) throw ConfigError("campaign: 'epsilon' must be a number");
    config.epsilon = j.at("epsilon").get<double>();
  }
  config.samples = count_field(j, {"M", "samples"}, config.samples);
  config.permutations = count_field(j, {"M_perm", "perms"}, config.permutations);
  config.bases = count_field(j, {"M_u", "bases"}, config.bases);
  config.term_budget = count_field(j, {"term_budget"}, config.term_budget);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw ConfigError("campaign: 'seed' must be an integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  } else {
    config.seed = config.ensemble.seed;
  }
  config.ensemble.seed = config.seed;
  config.output = j.value("out", std::string());
  return config;
}

std::vector<RandomnessReport> run_campaign(const CampaignConfig& config) {
  config.validate();
  VerifyOptions options;
  options.term_budget = config.term_budget;
  std::vector<RandomnessReport> reports;
  for (Tier tier : config.tiers) {
    for (int t : config.orders) {
      switch (tier) {
        case Tier::observable:
          reports.push_back(observable_randomness(config.ensemble, config.observable, t,
                                                  config.samples, config.epsilon,
                                                  options));
          break;
        case Tier::permutation:
          reports.push_back(permutation_randomness(
              config.ensemble, config.observable, t, config.permutations, config.samples,
              config.epsilon, options));
          break;
        case Tier::mub:
          reports.push_back(mub_randomness(config.ensemble, config.observable, t,
                                           config.bases, config.permutations,
                                           config.samples, config.epsilon, options));
          break;
      }
    }
  }
  return reports;
}

int exit_code_for(std::span<const RandomnessReport> reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::incompatible) return kExitIncompatible;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? kExitInconclusive : kExitAllCompatible;
}

io::json campaign_document(const CampaignConfig& config,
                           std::span<const RandomnessReport> reports) {
  io::json tiers = io::json::array();
  for (Tier tier : config.tiers) tiers.push_back(std::string(to_string(tier)));
  io::json list = io::json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : reports) {
    list.push_back(io::report_to_json(r));
    ++counts[static_cast<int>(r.verdict)];
  }
  return {
      {"config",
       {{"spectrum", io::observable_to_json(config.observable)},
        {"ensemble", io::ensemble_to_json(config.ensemble)},
        {"tiers", tiers},
        {"t", config.orders},
        {"epsilon", config.epsilon},
        {"M", config.samples},
        {"M_perm", config.permutations},
        {"M_u", config.bases},
        {"seed", config.seed},
        {"term_budget", config.term_budget}}},
      {"reports", list},
      {"summary",
       {{"compatible", counts[0]},
        {"incompatible", counts[1]},
        {"inconclusive", counts[2]},
        {"exit_code", exit_code_for(reports)}}},
  };
}

io::json campaign_meta(int threads) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  char host[256] = "unknown";
  gethostname(host, sizeof host - 1);
  return {{"timestamp", stamp}, {"host", host}, {"threads", threads}};
}

std::string human_summary(std::span<const RandomnessReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %3s %14s %14s %14s  %s\n", "tier", "t",
                "R", "delta", "mu_haar", "verdict");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-12s %3d %14.6e %14.6e %14.6e  %s\n",
                  std::string(to_string(r.tier)).c_str(), r.t, r.r, r.delta, r.mu_haar,
                  std::string(to_string(r.verdict)).c_str());
    out += line;
  }
  return out;
}

}  // namespace haar_sentinel
