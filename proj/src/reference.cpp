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

#include "haar_sentinel/reference.h"

#include <cmath>

#include "haar_sentinel/detail/compensated_sum.h"
#include "haar_sentinel/dirichlet.h"

namespace haar_sentinel::reference {

double exact_moment(const Spectrum& s, int t) {
  std::vector<double> half_mult;
  for (std::size_t m : s.multiplicities()) half_mult.push_back(0.5 * static_cast<double>(m));
  const DirichletParams params(half_mult);
  const std::vector<bool> everything(s.num_levels(), true);

  detail::CompensatedSum total;
  for_each_composition(t, everything, [&](std::span<const int> k) {
    double log_weight = std::lgamma(t + 1.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      if (s.eigenvalues()[i] == 0.0) return;
      log_weight += k[i] * std::log(s.eigenvalues()[i]) - std::lgamma(k[i] + 1.0);
    }
    total.add(std::exp(log_weight) * dirichlet_mixed_moment(params, k));
  });
  return total.value();
}

std::vector<double> generate_expectation_samples(const EnsembleSpec& spec,
                                                 const EigenAssignment& a,
                                                 const Unitary* basis,
                                                 std::size_t samples) {
  detail::check_sampling_inputs(spec, a, basis, samples);
  std::vector<double> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(spec.seed, i));
    out.push_back(detail::sample_expectation(spec, a, basis, rng));
  }
  return out;
}

}  // namespace haar_sentinel::reference
