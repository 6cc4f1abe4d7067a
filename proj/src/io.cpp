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

#include "haar_sentinel/io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "haar_sentinel/errors.h"

namespace haar_sentinel::io {

namespace {

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view token, std::size_t line) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' ||
                            token.back() == '\r')) {
    token.remove_suffix(1);
  }
  double value = 0.0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    throw ConfigError("samples: line " + std::to_string(line) + ": '" +
                      std::string(token) + "' is not a number");
  }
  return value;
}

template <typename T>
T required(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) {
    throw ConfigError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + ": field '" + key + "': " + e.what());
  }
}

std::size_t dimension_field(const json& j) {
  if (!j.contains("N")) throw ConfigError("ensemble: missing field 'N'");
  const auto& v = j.at("N");
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ConfigError("ensemble: 'N' must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

json spectrum_to_json(const Spectrum& s) {
  json mults = json::array();
  for (std::size_t m : s.multiplicities()) mults.push_back(m);
  return {{"eigenvalues", std::vector<double>(s.eigenvalues().begin(),
                                              s.eigenvalues().end())},
          {"multiplicities", mults}};
}

Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("spectrum: expected a JSON object");
  const auto values = required<json>(j, "eigenvalues", "spectrum");
  const auto mults = required<json>(j, "multiplicities", "spectrum");
  if (!values.is_array() || !mults.is_array()) {
    throw ConfigError("spectrum: eigenvalues and multiplicities must be arrays");
  }
  std::vector<double> eigenvalues;
  for (const auto& v : values) {
    if (!v.is_number()) throw ConfigError("spectrum: eigenvalue is not a number");
    eigenvalues.push_back(v.get<double>());
  }
  std::vector<std::int64_t> multiplicities;
  for (const auto& m : mults) {
    if (!m.is_number_integer()) {
      throw ConfigError("spectrum: multiplicity is not an integer");
    }
    multiplicities.push_back(m.get<std::int64_t>());
  }
  try {
    return Spectrum(std::move(eigenvalues), std::move(multiplicities));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json observable_to_json(const EigenAssignment& a) {
  const Spectrum s = collapse(a);
  json j = spectrum_to_json(s);
  if (!(expand(s) == a)) {
    j["diagonal"] = std::vector<double>(a.values().begin(), a.values().end());
  }
  return j;
}

EigenAssignment observable_from_json(const json& j) {
  if (!j.is_object() || !j.contains("diagonal")) return expand(spectrum_from_json(j));
  const auto& diag = j.at("diagonal");
  if (!diag.is_array()) throw ConfigError("spectrum: 'diagonal' must be an array");
  std::vector<double> values;
  for (const auto& v : diag) {
    if (!v.is_number()) throw ConfigError("spectrum: diagonal entry is not a number");
    values.push_back(v.get<double>());
  }
  try {
    EigenAssignment a(std::move(values));
    if (j.contains("eigenvalues") && !(spectrum_from_json(j) == collapse(a))) {
      throw ConfigError("spectrum: 'diagonal' disagrees with eigenvalues/multiplicities");
    }
    return a;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json ensemble_to_json(const EnsembleSpec& spec) {
  json j;
  j["kind"] = std::string(to_string(spec.kind));
  json params = json::object();
  switch (spec.kind) {
    case EnsembleKind::counterexample:
      j["n"] = spec.qubits;
      break;
    case EnsembleKind::fixed_basis_state:
      j["N"] = spec.dimension;
      params["index"] = spec.basis_index;
      break;
    case EnsembleKind::dirichlet_amplitudes:
      j["N"] = spec.dimension;
      if (!spec.alpha.empty()) params["alpha"] = spec.alpha;
      params["random_phases"] = spec.random_phases;
      break;
    case EnsembleKind::haar:
      j["N"] = spec.dimension;
      break;
  }
  j["params"] = params;
  j["seed"] = spec.seed;
  return j;
}

EnsembleSpec ensemble_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("ensemble: expected a JSON object");
  EnsembleSpec spec;
  try {
    spec.kind = ensemble_kind_from_string(required<std::string>(j, "kind", "ensemble"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ensemble: ") + e.what());
  }
  const json params = j.value("params", json::object());
  if (!params.is_object()) throw ConfigError("ensemble: 'params' must be an object");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      throw ConfigError("ensemble: 'seed' must be an integer");
    }
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  switch (spec.kind) {
    case EnsembleKind::counterexample: {
      if (!j.contains("n") || !j.at("n").is_number_integer()) {
        throw ConfigError("ensemble: counterexample needs integer 'n'");
      }
      spec.qubits = j.at("n").get<int>();
      if (spec.qubits < 1 || spec.qubits > 20) {
        throw ConfigError("ensemble: counterexample 'n' outside [1, 20]");
      }
      spec.dimension = std::size_t{1} << spec.qubits;
      if (j.contains("N") && j.at("N").get<std::size_t>() != spec.dimension) {
        throw ConfigError("ensemble: counterexample needs N = 2^n");
      }
      break;
    }
    case EnsembleKind::fixed_basis_state:
      spec.dimension = dimension_field(j);
      spec.basis_index = params.value("index", std::size_t{0});
      break;
    case EnsembleKind::dirichlet_amplitudes:
      spec.dimension = dimension_field(j);
      if (params.contains("alpha")) {
        const auto& alpha = params.at("alpha");
        if (alpha.is_number()) {
          spec.alpha.assign(spec.dimension, alpha.get<double>());
        } else {
          spec.alpha = alpha.get<std::vector<double>>();
        }
      }
      spec.random_phases = params.value("random_phases", false);
      break;
    case EnsembleKind::haar:
      spec.dimension = dimension_field(j);
      break;
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json report_to_json(const RandomnessReport& report) {
  const Provenance& p = report.provenance;
  json prov = {
      {"seed", p.seed},
      {"M", p.samples},
      {"M_perm", p.permutations},
      {"M_u", p.bases},
      {"mu_source", p.mu_source},
      {"delta_widening", p.delta_widening},
      {"stderr", p.standard_error},
      {"required_samples", p.required_samples},
      {"mean_deviation", p.mean_deviation},
      {"stream_deviations", p.stream_deviations},
      {"permutation_seeds", p.permutation_seeds},
      {"basis_indices", p.basis_indices},
      {"identity_permutations", p.identity_permutations},
  };
  if (p.dispersion) prov["dispersion"] = *p.dispersion;
  if (p.dispersion_bound) prov["dispersion_bound"] = *p.dispersion_bound;
  return {{"tier", std::string(to_string(report.tier))},
          {"t", report.t},
          {"R", report.r},
          {"delta", report.delta},
          {"epsilon", report.epsilon},
          {"mu_haar", report.mu_haar},
          {"verdict", std::string(to_string(report.verdict))},
          {"provenance", prov}};
}

RandomnessReport report_from_json(const json& j) {
  try {
    RandomnessReport r;
    r.tier = tier_from_string(j.at("tier").get<std::string>());
    r.t = j.at("t").get<int>();
    r.r = j.at("R").get<double>();
    r.delta = j.at("delta").get<double>();
    r.epsilon = j.at("epsilon").get<double>();
    r.mu_haar = j.at("mu_haar").get<double>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    const json& p = j.at("provenance");
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.samples = p.at("M").get<std::size_t>();
    r.provenance.permutations = p.at("M_perm").get<std::size_t>();
    r.provenance.bases = p.at("M_u").get<std::size_t>();
    r.provenance.mu_source = p.at("mu_source").get<std::string>();
    r.provenance.delta_widening = p.at("delta_widening").get<double>();
    r.provenance.standard_error = p.at("stderr").get<double>();
    r.provenance.required_samples = p.at("required_samples").get<std::uint64_t>();
    r.provenance.mean_deviation = p.at("mean_deviation").get<double>();
    r.provenance.stream_deviations = p.at("stream_deviations").get<std::vector<double>>();
    r.provenance.permutation_seeds =
        p.at("permutation_seeds").get<std::vector<std::uint64_t>>();
    r.provenance.basis_indices = p.at("basis_indices").get<std::vector<std::size_t>>();
    r.provenance.identity_permutations = p.at("identity_permutations").get<bool>();
    if (p.contains("dispersion")) r.provenance.dispersion = p.at("dispersion").get<double>();
    if (p.contains("dispersion_bound")) {
      r.provenance.dispersion_bound = p.at("dispersion_bound").get<double>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

json mub_set_to_json(const MubSet& set) {
  json bases = json::array();
  for (const auto& basis : set.bases()) {
    json columns = json::array();
    const auto& m = basis.matrix();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      json column = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        column.push_back({m(r, c).real(), m(r, c).imag()});
      }
      columns.push_back(column);
    }
    bases.push_back({{"label", basis.label()}, {"columns", columns}});
  }
  return {{"dimension", set.dimension()},
          {"max_deviation", set.max_deviation()},
          {"bases", bases}};
}

SampleFormat sample_format_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? SampleFormat::jsonl : SampleFormat::csv;
}

std::string format_samples(std::span<const double> samples, SampleFormat format) {
  std::string out;
  if (format == SampleFormat::csv) out += "sample\n";
  for (double x : samples) {
    out += format_double(x);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_samples(const std::string& text, SampleFormat format) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (format == SampleFormat::csv && !header_seen) {
      header_seen = true;
      if (line != "sample") {
        throw ConfigError("samples: CSV header must be 'sample', got '" + line + "'");
      }
      continue;
    }
    out.push_back(parse_double(line, line_no));
  }
  return out;
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_samples(buffer.str(), sample_format_for(path));
}

}  // namespace haar_sentinel::io
