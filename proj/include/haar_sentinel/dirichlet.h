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

#include <cstddef>
#include <span>
#include <vector>

#include "haar_sentinel/rng.h"

namespace haar_sentinel {

/// log(a (a+1) ... (a+k-1)) = log Gamma(a+k) - log Gamma(a), summed term by
/// term so that large `a` keeps full relative precision.
double log_rising_factorial(double a, int k);

/// Concentration parameters of a Dirichlet distribution (all > 0).
class DirichletParams {
 public:
  explicit DirichletParams(std::vector<double> alpha);

  std::span<const double> alpha() const { return alpha_; }
  double alpha0() const { return alpha0_; }
  std::size_t size() const { return alpha_.size(); }

 private:
  std::vector<double> alpha_;
  double alpha0_ = 0.0;
};

/// Point on the standard simplex: non-negative coordinates summing to one.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> coords);

  std::span<const double> coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// Normalised independent Gamma(alpha_i, 1) draws. Components may underflow
/// to exactly zero for small alpha.
SimplexPoint sample_dirichlet(const DirichletParams& params, Rng& rng);

/// Writes a Dirichlet draw into `out` without validation; the hot path used by
/// the ensemble kernels. `out.size()` must equal `params.size()`.
void sample_dirichlet_into(const DirichletParams& params, Rng& rng,
                           std::span<double> out);

/// E[prod_i x_i^{k_i}] for x ~ Dir(alpha), evaluated in log space.
double dirichlet_mixed_moment(const DirichletParams& params,
                              std::span<const int> k);

/// Groups must form a set partition of {0, ..., d-1}. The result has one
/// parameter per group, equal to the sum over its members.
DirichletParams aggregate(const DirichletParams& params,
                          const std::vector<std::vector<std::size_t>>& groups);

}  // namespace haar_sentinel
