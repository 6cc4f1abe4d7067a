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

// haar-sentinel: moments, sample generation, verification campaigns and MUB
// export from the command line.

#include <omp.h>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "haar_sentinel/campaign.h"
#include "haar_sentinel/errors.h"
#include "haar_sentinel/haar_moments.h"
#include "haar_sentinel/io.h"
#include "haar_sentinel/mub.h"

namespace hs = haar_sentinel;
namespace fs = std::filesystem;
using hs::io::json;

namespace {

struct Options {
  std::string spectrum;
  std::string ensemble;
  std::string orders;
  std::string mode = "exact";
  std::string out;
  std::string config;
  std::string samples_file;
  std::string format;
  std::vector<std::string> tiers;
  std::optional<double> epsilon;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> perms;
  std::optional<std::size_t> bases;
  std::optional<std::uint64_t> seed;
  std::size_t dimension = 0;
  int threads = 0;
};

std::uint64_t term_budget_from_env() {
  const char* raw = std::getenv("HAAR_SENTINEL_TERM_BUDGET");
  if (raw == nullptr || *raw == '\0') return hs::kDefaultTermBudget;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw hs::ConfigError(std::string("HAAR_SENTINEL_TERM_BUDGET='") + raw +
                          "' is not a non-negative integer");
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    hs::io::write_text_file(out, text);
  }
}

int cmd_moments(const Options& opt) {
  if (opt.spectrum.empty()) throw hs::ConfigError("moments: --spectrum is required");
  if (opt.mode != "exact" && opt.mode != "bounds") {
    throw hs::ConfigError("moments: --mode must be 'exact' or 'bounds'");
  }
  const hs::Spectrum s = hs::collapse(hs::load_observable(opt.spectrum));
  const auto orders = hs::parse_orders(opt.orders.empty() ? "1" : opt.orders);
  const std::uint64_t budget = term_budget_from_env();

  json rows = json::array();
  std::string table = opt.mode == "exact" ? "t\tvalue\tmethod\n" : "t\tlower\tupper\tmethod\n";
  for (int t : orders) {
    if (t < 1) throw hs::ConfigError("moments: orders must be >= 1");
    if (opt.mode == "exact") {
      const auto m = hs::exact_moment(s, t, budget);
      rows.push_back({{"t", t}, {"value", m.value}, {"method", "exact"}});
      table += std::to_string(t) + "\t" + json(m.value).dump() + "\texact\n";
    } else {
      const auto b = hs::moment_bounds(s, t);
      rows.push_back({{"t", t},
                      {"lower", b.lower},
                      {"upper", b.upper},
                      {"base", b.base},
                      {"lower_slack", b.lower_slack},
                      {"method", "bounds"}});
      table += std::to_string(t) + "\t" + json(b.lower).dump() + "\t" +
               json(b.upper).dump() + "\tbounds\n";
    }
  }
  if (opt.format == "json") {
    const json doc = {{"spectrum", hs::io::spectrum_to_json(s)}, {"moments", rows}};
    emit(opt.out, doc.dump(2) + "\n");
  } else {
    emit(opt.out, table);
  }
  return 0;
}

// A path to an ensemble JSON file, or a bare kind name sized to `dimension`.
hs::EnsembleSpec load_ensemble(const std::string& ref, std::size_t dimension) {
  if (fs::exists(ref)) return hs::io::ensemble_from_json(hs::io::read_json_file(ref));
  json j = {{"kind", ref}, {"N", dimension}};
  if (std::has_single_bit(dimension)) j["n"] = std::countr_zero(dimension);
  return hs::io::ensemble_from_json(j);
}

int cmd_generate(const Options& opt) {
  if (opt.ensemble.empty()) throw hs::ConfigError("generate: --ensemble is required");
  if (opt.spectrum.empty()) throw hs::ConfigError("generate: --spectrum is required");
  if (!opt.samples) throw hs::ConfigError("generate: --samples is required");
  const hs::EigenAssignment a = hs::load_observable(opt.spectrum);
  auto spec = load_ensemble(opt.ensemble, a.dimension());
  if (opt.seed) spec.seed = *opt.seed;
  if (spec.dimension != a.dimension()) {
    throw hs::ConfigError("generate: ensemble and spectrum dimensions differ");
  }
  hs::io::SampleFormat format = hs::io::SampleFormat::csv;
  if (opt.format == "jsonl") {
    format = hs::io::SampleFormat::jsonl;
  } else if (opt.format.empty() && !opt.out.empty()) {
    format = hs::io::sample_format_for(opt.out);
  } else if (!opt.format.empty() && opt.format != "csv") {
    throw hs::ConfigError("generate: --format must be 'csv' or 'jsonl'");
  }
  const auto values =
      hs::generate_expectation_samples(spec, a, nullptr, *opt.samples);
  emit(opt.out, hs::io::format_samples(values, format));
  return 0;
}

hs::CampaignConfig config_from_options(const Options& opt) {
  hs::CampaignConfig config;
  bool have_ensemble = false;
  if (!opt.config.empty()) {
    const fs::path path(opt.config);
    config = hs::campaign_from_json(hs::io::read_json_file(path), path.parent_path());
    have_ensemble = true;
  } else {
    if (opt.spectrum.empty()) throw hs::ConfigError("verify: --spectrum or a config is required");
    config.observable = hs::load_observable(opt.spectrum);
  }
  if (!opt.config.empty() && !opt.spectrum.empty()) {
    config.observable = hs::load_observable(opt.spectrum);
  }
  if (!opt.ensemble.empty()) {
    config.ensemble = load_ensemble(opt.ensemble, config.observable.dimension());
    config.seed = config.ensemble.seed;
    have_ensemble = true;
  }
  if (!have_ensemble && opt.samples_file.empty()) {
    throw hs::ConfigError("verify: --ensemble or a config is required");
  }
  if (!opt.tiers.empty()) {
    config.tiers.clear();
    for (const auto& name : opt.tiers) {
      try {
        config.tiers.push_back(hs::tier_from_string(name));
      } catch (const std::invalid_argument& e) {
        throw hs::ConfigError(e.what());
      }
    }
  }
  if (!opt.orders.empty()) config.orders = hs::parse_orders(opt.orders);
  if (opt.epsilon) config.epsilon = *opt.epsilon;
  if (opt.samples) config.samples = *opt.samples;
  if (opt.perms) config.permutations = *opt.perms;
  if (opt.bases) config.bases = *opt.bases;
  if (opt.seed) config.seed = *opt.seed;
  config.ensemble.seed = config.seed;
  if (!opt.out.empty()) config.output = opt.out;
  if (const char* raw = std::getenv("HAAR_SENTINEL_TERM_BUDGET"); raw && *raw) {
    config.term_budget = term_budget_from_env();
  }
  return config;
}

// Raw expectation values supplied by the user: only the average tier applies.
int verify_samples_file(const Options& opt, hs::CampaignConfig config) {
  const auto values = hs::io::read_samples(opt.samples_file);
  if (values.size() < 2) throw hs::ConfigError("verify: need at least 2 samples");
  hs::VerifyOptions options;
  options.term_budget = config.term_budget;
  std::vector<hs::RandomnessReport> reports;
  for (int t : config.orders) {
    if (t < 1) throw hs::ConfigError("verify: orders must be >= 1");
    reports.push_back(
        hs::average_randomness(values, config.spectrum(), t, config.epsilon, options));
  }
  config.tiers = {hs::Tier::observable};
  config.samples = values.size();
  json doc = hs::campaign_document(config, reports);
  doc["meta"] = hs::campaign_meta(omp_get_max_threads());
  std::cerr << hs::human_summary(reports);
  emit(config.output, doc.dump(2) + "\n");
  return hs::exit_code_for(reports);
}

int cmd_verify(const Options& opt) {
  hs::CampaignConfig config = config_from_options(opt);
  if (!opt.samples_file.empty()) return verify_samples_file(opt, std::move(config));
  const auto reports = hs::run_campaign(config);
  json doc = hs::campaign_document(config, reports);
  doc["meta"] = hs::campaign_meta(omp_get_max_threads());
  std::cerr << hs::human_summary(reports);
  emit(config.output, doc.dump(2) + "\n");
  return hs::exit_code_for(reports);
}

int cmd_mub(const Options& opt) {
  if (opt.dimension < 2) throw hs::ConfigError("mub: --dimension must be >= 2");
  const hs::MubSet set = hs::mub_complete_set(opt.dimension);
  std::cerr << "N=" << set.dimension() << " bases=" << set.bases().size()
            << " max_deviation=" << set.max_deviation() << "\n";
  emit(opt.out, hs::io::mub_set_to_json(set).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar-randomness verification from observable expectation values"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", opt.out, "Output file (default: stdout)");
    sub->add_option("--threads", opt.threads, "OpenMP worker count")->check(CLI::PositiveNumber);
  };

  auto* moments = app.add_subcommand("moments", "Haar moments of an observable");
  moments->add_option("--spectrum", opt.spectrum, "Spectrum JSON file or number:<n>");
  moments->add_option("--t", opt.orders, "Orders: 3, 1..4 or 1,2,5");
  moments->add_option("--mode", opt.mode, "exact or bounds");
  moments->add_option("--format", opt.format, "table (default) or json");
  add_common(moments);

  auto* generate = app.add_subcommand("generate", "Sample expectation values");
  generate->add_option("--ensemble", opt.ensemble, "Ensemble JSON file or kind name");
  generate->add_option("--spectrum", opt.spectrum, "Spectrum JSON file or number:<n>");
  generate->add_option("--samples,-M", opt.samples, "Number of states");
  generate->add_option("--seed", opt.seed, "Overrides the ensemble seed");
  generate->add_option("--format", opt.format, "csv or jsonl");
  add_common(generate);

  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("config,--config", opt.config, "Campaign JSON file");
  verify->add_option("--spectrum", opt.spectrum, "Spectrum JSON file or number:<n>");
  verify->add_option("--ensemble", opt.ensemble, "Ensemble JSON file or kind name");
  verify->add_option("--tiers", opt.tiers, "observable, permutation, mub")->delimiter(',');
  verify->add_option("--t", opt.orders, "Orders: 3, 1..4 or 1,2,5");
  verify->add_option("--epsilon", opt.epsilon, "Tolerance");
  verify->add_option("--samples,-M", opt.samples, "States per stream");
  verify->add_option("--perms", opt.perms, "Permutation draws");
  verify->add_option("--bases", opt.bases, "MUB draws");
  verify->add_option("--seed", opt.seed, "Root seed");
  verify->add_option("--samples-file", opt.samples_file, "CSV/JSON-lines of expectation values");
  add_common(verify);

  auto* mub = app.add_subcommand("mub", "Dump a complete set of mutually unbiased bases");
  mub->add_option("--dimension,-N", opt.dimension, "Hilbert space dimension")->required();
  add_common(mub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hs::kExitConfigError;
  }

  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  try {
    if (moments->parsed()) return cmd_moments(opt);
    if (generate->parsed()) return cmd_generate(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (mub->parsed()) return cmd_mub(opt);
  } catch (const hs::TermBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hs::kExitTermBudget;
  } catch (const hs::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hs::kExitUnsupportedDimension;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hs::kExitConfigError;
  }
  return hs::kExitConfigError;
}
