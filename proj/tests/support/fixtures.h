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

#include <random>

#include "haar_sentinel/spectrum.h"

namespace testsupport {

/// G uniform in [1, max_levels], N uniform in [G, max_dim], multiplicities a
/// uniform composition of N into G positive parts, distinct eigenvalues
/// uniform in [0, 10).
haar_sentinel::Spectrum random_spectrum(std::mt19937_64& gen, std::size_t max_levels,
                                        std::size_t max_dim);

}  // namespace testsupport
