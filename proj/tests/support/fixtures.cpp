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

#include "support/fixtures.h"

#include <algorithm>

namespace testsupport {

haar_sentinel::Spectrum random_spectrum(std::mt19937_64& gen, std::size_t max_levels,
                                        std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> levels(1, max_levels);
  const std::size_t g = levels(gen);
  std::uniform_int_distribution<std::size_t> dims(g, max_dim);
  const std::size_t n = dims(gen);
  std::vector<std::size_t> cuts;
  if (g > 1) {
    std::uniform_int_distribution<std::size_t> cut(1, n - 1);
    while (cuts.size() + 1 < g) {
      const std::size_t c = cut(gen);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> mults;
  std::size_t prev = 0;
  for (std::size_t c : cuts) {
    mults.push_back(static_cast<std::int64_t>(c - prev));
    prev = c;
  }
  mults.push_back(static_cast<std::int64_t>(n - prev));
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::vector<double> eig;
  while (eig.size() < g) {
    const double v = value(gen);
    if (std::find(eig.begin(), eig.end(), v) == eig.end()) eig.push_back(v);
  }
  return haar_sentinel::Spectrum(std::move(eig), std::move(mults));
}

}  // namespace testsupport
