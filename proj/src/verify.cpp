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

#include "haar_sentinel/verify.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "haar_sentinel/errors.h"
#include "haar_sentinel/mub.h"

namespace haar_sentinel {

namespace {

double ipow(double x, int t) {
  double result = 1.0;
  for (int i = 0; i < t; ++i) result *= x;
  return result;
}

void require_order(int t) {
  if (t < 1) throw std::invalid_argument("verify: order t must be >= 1");
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("verify: epsilon must be > 0");
}

void require_matching(const EnsembleSpec& spec, const Spectrum& s) {
  spec.validate();
  if (spec.dimension != s.dimension()) {
    throw std::invalid_argument("verify: ensemble dimension " +
                                std::to_string(spec.dimension) +
                                " != spectrum dimension " +
                                std::to_string(s.dimension()));
  }
}

Permutation draw_permutation(std::uint64_t seed, std::size_t n, bool identity) {
  if (identity) return Permutation::identity(n);
  Rng rng(derive_seed(seed, 0, SeedDomain::permutation));
  return Permutation::random(n, rng);
}

// Accumulates per-stream estimates into a higher-tier report.
struct StreamSummary {
  std::vector<double> deviations;
  double variance_sum = 0.0;
  std::size_t samples_per_stream = 0;

  void add(const MomentEstimate& estimate, double mu) {
    deviations.push_back(estimate.mean - mu);
    variance_sum += estimate.variance;
    samples_per_stream = estimate.samples;
  }

  void fill(RandomnessReport& report) const {
    double worst = deviations.front();
    double total = 0.0;
    for (double d : deviations) {
      if (std::abs(d) > std::abs(worst)) worst = d;
      total += d;
    }
    const double count = static_cast<double>(deviations.size());
    report.r = worst;
    report.provenance.mean_deviation = total / count;
    report.provenance.stream_deviations = deviations;
    report.provenance.standard_error =
        std::sqrt(variance_sum / static_cast<double>(samples_per_stream)) / count;
  }
};

}  // namespace

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::observable:
      return "observable";
    case Tier::permutation:
      return "permutation";
    case Tier::mub:
      return "mub";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::compatible:
      return "compatible";
    case Verdict::incompatible:
      return "incompatible";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Tier tier_from_string(std::string_view name) {
  if (name == "observable") return Tier::observable;
  if (name == "permutation") return Tier::permutation;
  if (name == "mub") return Tier::mub;
  throw std::invalid_argument("unknown tier '" + std::string(name) + "'");
}

Verdict verdict_from_string(std::string_view name) {
  if (name == "compatible") return Verdict::compatible;
  if (name == "incompatible") return Verdict::incompatible;
  if (name == "inconclusive") return Verdict::inconclusive;
  throw std::invalid_argument("unknown verdict '" + std::string(name) + "'");
}

MomentEstimate estimate_moment(std::span<const double> samples, int t) {
  require_order(t);
  if (samples.size() < 2) {
    throw std::invalid_argument("estimate_moment: need at least 2 samples");
  }
  const double m = static_cast<double>(samples.size());
  double total = 0.0;
  for (double x : samples) total += ipow(x, t);
  const double mean = total / m;
  double squares = 0.0;
  for (double x : samples) {
    const double d = ipow(x, t) - mean;
    squares += d * d;
  }
  const double variance = squares / (m - 1.0);
  return {t, mean, variance, samples.size(), std::sqrt(variance / m)};
}

Verdict classify(double r, double delta, double epsilon) {
  const double magnitude = std::abs(r);
  if (magnitude <= delta) return Verdict::compatible;
  if (magnitude > epsilon) return Verdict::incompatible;
  return Verdict::inconclusive;
}

HaarReference haar_reference(const Spectrum& s, int t, std::uint64_t term_budget) {
  try {
    return {exact_moment(s, t, term_budget).value, 0.0, "exact"};
  } catch (const TermBudgetExceeded&) {
    const MomentBounds bounds = moment_bounds(s, t);
    return {0.5 * (bounds.lower + bounds.upper), 0.5 * (bounds.upper - bounds.lower),
            "bounds_midpoint"};
  }
}

std::uint64_t stream_seed(std::uint64_t root, std::size_t b, std::size_t p) {
  return derive_seed(derive_seed(root, b, SeedDomain::branch), p,
                     SeedDomain::branch);
}

RandomnessReport average_randomness(std::span<const double> samples,
                                    const Spectrum& s, int t, double epsilon,
                                    const VerifyOptions& options) {
  require_epsilon(epsilon);
  const MomentEstimate estimate = estimate_moment(samples, t);
  const HaarReference ref = haar_reference(s, t, options.term_budget);

  RandomnessReport report;
  report.tier = Tier::observable;
  report.t = t;
  report.r = estimate.mean - ref.mu;
  report.delta =
      sampling_threshold(s, t, static_cast<double>(estimate.samples)) + ref.widening;
  report.epsilon = epsilon;
  report.mu_haar = ref.mu;
  report.verdict = classify(report.r, report.delta, epsilon);
  report.provenance.samples = estimate.samples;
  report.provenance.permutations = 1;
  report.provenance.bases = 1;
  report.provenance.mu_source = ref.source;
  report.provenance.delta_widening = ref.widening;
  report.provenance.standard_error = estimate.standard_error;
  report.provenance.required_samples = required_samples(s, t, epsilon);
  report.provenance.mean_deviation = report.r;
  report.provenance.stream_deviations = {report.r};
  report.provenance.identity_permutations = true;
  return report;
}

RandomnessReport observable_randomness(const EnsembleSpec& spec,
                                       const EigenAssignment& observable, int t,
                                       std::size_t samples, double epsilon,
                                       const VerifyOptions& options) {
  const Spectrum s = collapse(observable);
  require_matching(spec, s);
  const auto values = generate_expectation_samples(
      spec.with_seed(stream_seed(spec.seed, 0, 0)), observable, nullptr, samples);
  RandomnessReport report = average_randomness(values, s, t, epsilon, options);
  report.provenance.seed = spec.seed;
  return report;
}

RandomnessReport permutation_randomness(const EnsembleSpec& spec,
                                        const EigenAssignment& observable, int t,
                                        std::size_t permutations,
                                        std::size_t samples, double epsilon,
                                        const VerifyOptions& options) {
  const Spectrum s = collapse(observable);
  require_order(t);
  require_epsilon(epsilon);
  require_matching(spec, s);
  if (permutations < 1) {
    throw std::invalid_argument("permutation_randomness: M_perm must be >= 1");
  }
  if (samples < 2) {
    throw std::invalid_argument("permutation_randomness: M must be >= 2");
  }
  const HaarReference ref = haar_reference(s, t, options.term_budget);

  RandomnessReport report;
  report.tier = Tier::permutation;
  report.t = t;
  report.epsilon = epsilon;
  report.mu_haar = ref.mu;

  StreamSummary summary;
  std::vector<MomentEstimate> per_perm;
  for (std::size_t p = 0; p < permutations; ++p) {
    const std::uint64_t seed = stream_seed(spec.seed, 0, p);
    const Permutation perm =
        draw_permutation(seed, s.dimension(), options.force_identity);
    const auto values = generate_expectation_samples(
        spec.with_seed(seed), apply_permutation(observable, perm), nullptr, samples);
    per_perm.push_back(estimate_moment(values, t));
    summary.add(per_perm.back(), ref.mu);
    report.provenance.permutation_seeds.push_back(seed);
  }
  summary.fill(report);

  if (permutations >= 2) {
    const auto baseline_values = generate_expectation_samples(
        spec.with_seed(stream_seed(spec.seed, 0, 0)), observable, nullptr, samples);
    const auto dispersion = permutation_dispersion(
        per_perm, estimate_moment(baseline_values, t), s, t, epsilon);
    report.provenance.dispersion = dispersion.dispersion;
    report.provenance.dispersion_bound = dispersion.bound;
  }

  // R is a single-stream deviation, so the threshold is the one for M samples.
  report.delta = sampling_threshold(s, t, static_cast<double>(samples)) + ref.widening;
  report.verdict = classify(report.r, report.delta, epsilon);
  report.provenance.seed = spec.seed;
  report.provenance.samples = samples;
  report.provenance.permutations = permutations;
  report.provenance.bases = 1;
  report.provenance.mu_source = ref.source;
  report.provenance.delta_widening = ref.widening;
  report.provenance.required_samples = required_samples(s, t, epsilon);
  report.provenance.identity_permutations = options.force_identity;
  return report;
}

RandomnessReport mub_randomness(const EnsembleSpec& spec,
                                const EigenAssignment& observable, int t,
                                std::size_t bases, std::size_t permutations,
                                std::size_t samples, double epsilon,
                                const VerifyOptions& options) {
  const Spectrum s = collapse(observable);
  require_order(t);
  require_epsilon(epsilon);
  require_matching(spec, s);
  if (bases < 1 || permutations < 1) {
    throw std::invalid_argument("mub_randomness: M_u and M_perm must be >= 1");
  }
  if (samples < 2) throw std::invalid_argument("mub_randomness: M must be >= 2");
  const MubSet set = mub_complete_set(s.dimension());
  const HaarReference ref = haar_reference(s, t, options.term_budget);

  RandomnessReport report;
  report.tier = Tier::mub;
  report.t = t;
  report.epsilon = epsilon;
  report.mu_haar = ref.mu;

  StreamSummary summary;
  for (std::size_t b = 0; b < bases; ++b) {
    Rng basis_rng(derive_seed(spec.seed, b, SeedDomain::basis));
    const std::size_t basis_index = static_cast<std::size_t>(basis_rng() % set.size());
    report.provenance.basis_indices.push_back(basis_index);
    const Unitary& basis = set.bases()[basis_index].unitary();
    for (std::size_t p = 0; p < permutations; ++p) {
      const std::uint64_t seed = stream_seed(spec.seed, b, p);
      const Permutation perm =
          draw_permutation(seed, s.dimension(), options.force_identity);
      const auto values = generate_expectation_samples(
          spec.with_seed(seed), apply_permutation(observable, perm), &basis, samples);
      summary.add(estimate_moment(values, t), ref.mu);
      report.provenance.permutation_seeds.push_back(seed);
    }
  }
  summary.fill(report);

  report.delta = sampling_threshold(s, t, static_cast<double>(samples)) + ref.widening;
  report.verdict = classify(report.r, report.delta, epsilon);
  report.provenance.seed = spec.seed;
  report.provenance.samples = samples;
  report.provenance.permutations = permutations;
  report.provenance.bases = bases;
  report.provenance.mu_source = ref.source;
  report.provenance.delta_widening = ref.widening;
  report.provenance.required_samples = required_samples(s, t, epsilon);
  report.provenance.identity_permutations = options.force_identity;
  return report;
}

PermutationDispersion permutation_dispersion(
    std::span<const MomentEstimate> per_perm, const MomentEstimate& baseline,
    const Spectrum& s, int t, double epsilon) {
  require_order(t);
  if (per_perm.size() < 2) {
    throw std::invalid_argument(
        "permutation_dispersion: need at least 2 permutation estimates");
  }
  PermutationDispersion out;
  out.t = t;
  double mean = 0.0;
  for (const auto& e : per_perm) {
    out.per_perm_moments.push_back(e.mean);
    mean += e.mean - baseline.mean;
  }
  const double count = static_cast<double>(per_perm.size());
  mean /= count;
  double squares = 0.0;
  for (const auto& e : per_perm) {
    const double d = (e.mean - baseline.mean) - mean;
    squares += d * d;
  }
  out.raw_variance = squares / (count - 1.0);
  const double tr = trace(s);
  const double norm = tr > 0.0 ? std::pow(tr, 2 * t) : 1.0;
  out.dispersion = out.raw_variance / norm;
  out.bound = 2.0 * epsilon / norm;
  out.within_bound = out.dispersion <= out.bound;
  return out;
}

AlphaCheck alpha_pairwise_check(std::span<const double> group_masses,
                                const Spectrum& s, double epsilon) {
  if (s.num_levels() < 2) {
    throw std::invalid_argument(
        "alpha_pairwise_check: needs at least two eigenspaces");
  }
  if (group_masses.size() != s.num_levels()) {
    throw std::invalid_argument(
        "alpha_pairwise_check: one mass per eigenspace required");
  }
  double total = 0.0;
  for (double m : group_masses) {
    if (m < 0.0) throw std::invalid_argument("alpha_pairwise_check: negative mass");
    total += m;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("alpha_pairwise_check: masses sum to zero");
  }
  const double half_n = 0.5 * static_cast<double>(s.dimension());
  AlphaCheck out;
  for (double m : group_masses) out.inferred_alpha.push_back(m / total * half_n);

  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < group_masses.size(); ++i) {
    for (std::size_t j = i + 1; j < group_masses.size(); ++j) {
      const double expected =
          0.5 * (static_cast<double>(s.multiplicities()[i]) -
                 static_cast<double>(s.multiplicities()[j]));
      const double d = out.inferred_alpha[i] - out.inferred_alpha[j] - expected;
      sum += d * d;
      ++pairs;
    }
  }
  out.statistic = sum / static_cast<double>(pairs) / (half_n * half_n);
  const double tr = trace(s);
  out.bound = tr > 0.0 ? 2.0 * epsilon / (tr * tr)
                       : std::numeric_limits<double>::infinity();
  out.within_bound = out.statistic <= out.bound;
  return out;
}

}  // namespace haar_sentinel
