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

#include "haar_sentinel/dirichlet.h"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace haar_sentinel {

double log_rising_factorial(double a, int k) {
  if (k < 0) throw std::invalid_argument("log_rising_factorial: k < 0");
  // Past this length lgamma is cheaper and its absolute error no longer
  // dominates the sum.
  if (k > 256) return std::lgamma(a + k) - std::lgamma(a);
  double total = 0.0;
  for (int j = 0; j < k; ++j) total += std::log(a + j);
  return total;
}

DirichletParams::DirichletParams(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.empty()) {
    throw std::invalid_argument("dirichlet: empty parameter vector");
  }
  for (double a : alpha_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("dirichlet: parameter " + std::to_string(a) +
                                  " is not a positive finite number");
    }
  }
  alpha0_ = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

SimplexPoint::SimplexPoint(std::vector<double> coords)
    : coords_(std::move(coords)) {
  double total = 0.0;
  for (double x : coords_) {
    if (!(x >= 0.0)) {
      throw std::invalid_argument("simplex point: negative coordinate");
    }
    total += x;
  }
  if (coords_.empty() || std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("simplex point: coordinates do not sum to 1");
  }
}

void sample_dirichlet_into(const DirichletParams& params, Rng& rng,
                           std::span<double> out) {
  const auto alpha = params.alpha();
  if (alpha.size() == 1) {
    out[0] = 1.0;
    return;
  }
  double total = 0.0;
  // All-zero draws are possible for tiny alpha; redraw rather than divide
  // by zero.
  while (!(total > 0.0)) {
    total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      std::gamma_distribution<double> gamma(alpha[i], 1.0);
      out[i] = gamma(rng);
      total += out[i];
    }
  }
  for (double& x : out) x /= total;
}

SimplexPoint sample_dirichlet(const DirichletParams& params, Rng& rng) {
  std::vector<double> x(params.size());
  sample_dirichlet_into(params, rng, x);
  return SimplexPoint(std::move(x));
}

double dirichlet_mixed_moment(const DirichletParams& params,
                              std::span<const int> k) {
  if (k.size() != params.size()) {
    throw std::invalid_argument(
        "dirichlet_mixed_moment: order vector length " +
        std::to_string(k.size()) + " != " + std::to_string(params.size()));
  }
  int k0 = 0;
  double log_value = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) {
      throw std::invalid_argument("dirichlet_mixed_moment: negative order");
    }
    k0 += k[i];
    log_value += log_rising_factorial(params.alpha()[i], k[i]);
  }
  log_value -= log_rising_factorial(params.alpha0(), k0);
  return std::exp(log_value);
}

DirichletParams aggregate(const DirichletParams& params,
                          const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<bool> seen(params.size(), false);
  std::size_t covered = 0;
  std::vector<double> summed;
  summed.reserve(groups.size());
  for (const auto& group : groups) {
    if (group.empty()) {
      throw std::invalid_argument("aggregate: empty group");
    }
    double total = 0.0;
    for (std::size_t index : group) {
      if (index >= params.size() || seen[index]) {
        throw std::invalid_argument(
            "aggregate: groups are not a partition of the index range");
      }
      seen[index] = true;
      ++covered;
      total += params.alpha()[index];
    }
    summed.push_back(total);
  }
  if (covered != params.size()) {
    throw std::invalid_argument("aggregate: groups do not cover every index");
  }
  return DirichletParams(std::move(summed));
}

}  // namespace haar_sentinel
