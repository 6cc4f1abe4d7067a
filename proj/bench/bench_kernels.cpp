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

// Wall-clock comparison of the OpenMP kernels against their serial
// references. Usage: bench_kernels [repetitions]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "haar_sentinel/ensembles.h"
#include "haar_sentinel/haar_moments.h"
#include "haar_sentinel/reference.h"

namespace hs = haar_sentinel;

namespace {

double best_of(int reps, const std::function<double()>& body, double& sink) {
  double best = INFINITY;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    sink += body();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-40s %12.4f %12.4f %8.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  double sink = 0.0;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
  std::printf("%-40s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  for (int n : {8, 12}) {
    const hs::Spectrum s = hs::number_operator(n);
    for (int t : {4, 6}) {
      const double serial =
          best_of(reps, [&] { return hs::reference::exact_moment(s, t); }, sink);
      const double parallel =
          best_of(reps, [&] { return hs::exact_moment(s, t).value; }, sink);
      char name[64];
      std::snprintf(name, sizeof name, "exact_moment n=%d t=%d", n, t);
      row(name, serial, parallel);
    }
  }

  for (int n : {6, 10}) {
    const hs::Spectrum s = hs::number_operator(n);
    const auto a = hs::expand(s);
    const auto spec = hs::EnsembleSpec::haar(s.dimension(), 42);
    const std::size_t m = n == 6 ? 200000 : 20000;
    const double serial = best_of(reps, [&] {
      return hs::reference::generate_expectation_samples(spec, a, nullptr, m).back();
    }, sink);
    const double parallel = best_of(reps, [&] {
      return hs::generate_expectation_samples(spec, a, nullptr, m).back();
    }, sink);
    char name[64];
    std::snprintf(name, sizeof name, "haar samples N=%zu M=%zu", s.dimension(), m);
    row(name, serial, parallel);
  }
  std::printf("(checksum %.6g)\n", sink);
  return 0;
}
