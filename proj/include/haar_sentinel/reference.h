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
#include <vector>

#include "haar_sentinel/ensembles.h"
#include "haar_sentinel/haar_moments.h"

// Serial, unoptimised counterparts of the OpenMP kernels. They exist to pin
// the parallel versions in tests and to give the benchmark a baseline.
namespace haar_sentinel::reference {

/// Multinomial expansion over the full (unpruned) composition set, each term
/// a Dirichlet mixed moment of Dir(m/2), summed serially.
double exact_moment(const Spectrum& s, int t);

/// Sample-by-sample loop with the same per-index seed derivation as
/// haar_sentinel::generate_expectation_samples.
std::vector<double> generate_expectation_samples(const EnsembleSpec& spec,
                                                 const EigenAssignment& a,
                                                 const Unitary* basis,
                                                 std::size_t samples);

}  // namespace haar_sentinel::reference
