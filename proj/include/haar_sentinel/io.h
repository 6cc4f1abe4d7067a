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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "haar_sentinel/ensembles.h"
#include "haar_sentinel/mub.h"
#include "haar_sentinel/spectrum.h"
#include "haar_sentinel/verify.h"

namespace haar_sentinel::io {

using nlohmann::json;

/// Parses a file as JSON; any failure becomes ConfigError.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// {"eigenvalues": [...], "multiplicities": [...]}
json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);

// A spectrum object, optionally with "diagonal": [...] fixing which basis
// state carries which eigenvalue. Without it the ascending layout is used.
json observable_to_json(const EigenAssignment& a);
EigenAssignment observable_from_json(const json& j);

// {"kind": "...", "N" | "n": int, "params": {...}, "seed": int}
json ensemble_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_from_json(const json& j);

json report_to_json(const RandomnessReport& report);
RandomnessReport report_from_json(const json& j);

/// Complex entries as [re, im] pairs; "columns" lists each basis vector.
json mub_set_to_json(const MubSet& set);

enum class SampleFormat { csv, jsonl };

/// Picks the format from the extension: ".jsonl"/".json" -> jsonl, else csv.
SampleFormat sample_format_for(const std::filesystem::path& path);

/// CSV has a single "sample" column; JSON-lines has one number per line.
/// Values are written with round-trip precision.
std::string format_samples(std::span<const double> samples, SampleFormat format);
std::vector<double> parse_samples(const std::string& text, SampleFormat format);
std::vector<double> read_samples(const std::filesystem::path& path);

}  // namespace haar_sentinel::io
