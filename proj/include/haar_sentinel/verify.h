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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "haar_sentinel/ensembles.h"
#include "haar_sentinel/haar_moments.h"
#include "haar_sentinel/spectrum.h"

namespace haar_sentinel {

enum class Tier { observable, permutation, mub };
enum class Verdict { compatible, incompatible, inconclusive };

std::string_view to_string(Tier tier);
std::string_view to_string(Verdict verdict);
Tier tier_from_string(std::string_view name);
Verdict verdict_from_string(std::string_view name);

/// Empirical t-th moment of a batch of expectation values.
struct MomentEstimate {
  int t = 0;
  double mean = 0.0;
  /// Unbiased (M - 1 denominator) variance of the powered samples.
  double variance = 0.0;
  std::size_t samples = 0;
  double standard_error = 0.0;
};

/// Requires at least two samples.
MomentEstimate estimate_moment(std::span<const double> samples, int t);

/// compatible iff |R| <= delta; otherwise incompatible iff |R| > epsilon,
/// inconclusive when delta < |R| <= epsilon.
Verdict classify(double r, double delta, double epsilon);

struct Provenance {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t permutations = 0;
  std::size_t bases = 0;
  /// "exact", or "bounds_midpoint" when the exact sum exceeded the budget.
  std::string mu_source = "exact";
  /// Added to the sampling threshold when mu_haar is a bounds midpoint.
  double delta_widening = 0.0;
  /// Empirical Monte Carlo error of the pooled estimate.
  double standard_error = 0.0;
  std::uint64_t required_samples = 0;
  /// Mean over (basis, permutation) streams of mu_t(stream) - mu_haar.
  double mean_deviation = 0.0;
  std::vector<double> stream_deviations;
  std::vector<std::uint64_t> permutation_seeds;
  std::vector<std::size_t> basis_indices;
  bool identity_permutations = false;
  std::optional<double> dispersion;
  std::optional<double> dispersion_bound;

  bool operator==(const Provenance&) const = default;
};

/// Outcome of one verification tier at one moment order.
///
/// For the observable tier R is the estimated moment minus the Haar value.
/// For the permutation and MUB tiers every (basis, permutation) stream gets
/// its own deviation and R is the one of largest magnitude; the mean over
/// streams is kept in provenance. delta is the sampling threshold of one
/// stream, (Tr O/N)^t 2t / sqrt(M) sqrt(1 + 3G / (8 min m^2)).
struct RandomnessReport {
  Tier tier = Tier::observable;
  int t = 1;
  double r = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double mu_haar = 0.0;
  Verdict verdict = Verdict::inconclusive;
  Provenance provenance;

  bool operator==(const RandomnessReport&) const = default;
};

struct VerifyOptions {
  std::uint64_t term_budget = kDefaultTermBudget;
  /// Replace sampled permutations by the identity (degenerate tier).
  bool force_identity = false;
};

/// Haar reference value used by every tier: the exact moment when it fits the
/// term budget, else the midpoint of moment_bounds plus half their width as
/// delta widening.
struct HaarReference {
  double mu = 0.0;
  double widening = 0.0;
  std::string source;
};

HaarReference haar_reference(const Spectrum& s, int t, std::uint64_t term_budget);

/// Seed of the sample stream for basis draw `b`, permutation draw `p`.
std::uint64_t stream_seed(std::uint64_t root, std::size_t b, std::size_t p);

RandomnessReport average_randomness(std::span<const double> samples,
                                    const Spectrum& s, int t, double epsilon,
                                    const VerifyOptions& options = {});

// The sampling tiers take the observable as its diagonal `observable` in the
// reference basis; the Haar reference depends only on collapse(observable).

/// Generates M samples on stream (0, 0) and runs average_randomness on them.
RandomnessReport observable_randomness(const EnsembleSpec& spec,
                                       const EigenAssignment& observable, int t,
                                       std::size_t samples, double epsilon,
                                       const VerifyOptions& options = {});

/// Stream p relabels the eigenbasis by a uniformly drawn permutation.
RandomnessReport permutation_randomness(const EnsembleSpec& spec,
                                        const EigenAssignment& observable, int t,
                                        std::size_t permutations,
                                        std::size_t samples, double epsilon,
                                        const VerifyOptions& options = {});

/// Throws UnsupportedDimension when no complete MUB set exists for N.
RandomnessReport mub_randomness(const EnsembleSpec& spec,
                                const EigenAssignment& observable, int t,
                                std::size_t bases, std::size_t permutations,
                                std::size_t samples, double epsilon,
                                const VerifyOptions& options = {});

/// Spread of the moment across relabelled observables, normalised by
/// Tr(O)^(2t) and compared with 2 epsilon / Tr(O)^(2t).
struct PermutationDispersion {
  int t = 0;
  std::vector<double> per_perm_moments;
  /// Sample variance of (per-permutation mean - baseline mean).
  double raw_variance = 0.0;
  double dispersion = 0.0;
  double bound = 0.0;
  bool within_bound = false;
};

PermutationDispersion permutation_dispersion(
    std::span<const MomentEstimate> per_perm, const MomentEstimate& baseline,
    const Spectrum& s, int t, double epsilon);

struct AlphaCheck {
  double statistic = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  std::vector<double> inferred_alpha;
};

/// Infers Dirichlet parameters from per-eigenspace mean masses (scaled to sum
/// to N/2) and measures their pairwise departure from the Haar value m/2:
/// mean over pairs i < j of (a_i - a_j - (m_i - m_j)/2)^2 / |a|_1^2, against
/// 2 epsilon / Tr(O)^2. Needs at least two eigenspaces.
AlphaCheck alpha_pairwise_check(std::span<const double> group_masses,
                                const Spectrum& s, double epsilon);

}  // namespace haar_sentinel
