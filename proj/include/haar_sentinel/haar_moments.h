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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "haar_sentinel/spectrum.h"

namespace haar_sentinel {

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

enum class MomentMethod { exact, lower_bound, upper_bound };

std::string_view to_string(MomentMethod method);

/// A t-th moment of <psi|O|psi> over Haar-random states.
struct MomentValue {
  int t = 0;
  double value = 0.0;
  MomentMethod method = MomentMethod::exact;
};

/// Closed-form envelope of the t-th moment. `lower` is the leading-order
/// value (Tr O / N)^t itself; the unquantified O(t/N) correction is reported
/// separately in `lower_slack` as the relative allowance 10 t / N.
struct MomentBounds {
  int t = 0;
  double lower = 0.0;
  double upper = 0.0;
  double base = 0.0;
  double lower_slack = 0.0;
};

/// Number of k in N^g with |k|_1 = t, i.e. binomial(t + g - 1, g - 1).
/// Saturates at UINT64_MAX.
std::uint64_t composition_count(int t, std::size_t g);

/// Calls `visit` once per k in N^G with |k|_1 = t and k_i = 0 wherever
/// `support_mask[i]` is false, in lexicographically descending order of the
/// supported coordinates.
void for_each_composition(int t, const std::vector<bool>& support_mask,
                          const std::function<void(std::span<const int>)>& visit);

/// Materialised form of for_each_composition.
std::vector<std::vector<int>> compositions(int t, std::size_t num_levels,
                                           const std::vector<bool>& support_mask);

/// Exact Haar moment E[<psi|O|psi>^t] via the multinomial expansion over
/// Dir(m/2). Zero eigenvalues are pruned from the expansion. Throws
/// TermBudgetExceeded when more than `term_budget` compositions would be
/// summed. The composition stream is split across OpenMP threads; the result
/// does not depend on the thread count.
MomentValue exact_moment(const Spectrum& s, int t,
                         std::uint64_t term_budget = kDefaultTermBudget);

MomentBounds moment_bounds(const Spectrum& s, int t);

/// mu_{2t} - mu_t^2, clamped at zero.
double haar_variance(const Spectrum& s, int t,
                     std::uint64_t term_budget = kDefaultTermBudget);

/// The variance-bound correction 1 + (3/8) G / (min_i m_i)^2.
double variance_correction(const Spectrum& s);

/// Monte Carlo sample count needed to resolve an O-shadowed t-design to
/// `epsilon`: ceil((2t/eps (Tr O/N)^t)^2 (1 + 3G / (8 min m^2))).
std::uint64_t required_samples(const Spectrum& s, int t, double epsilon);

/// Inverse of required_samples: the resolution reached with
/// `effective_samples` independent expectation values,
/// (Tr O/N)^t 2t / sqrt(M_eff) sqrt(1 + 3G / (8 min m^2)).
double sampling_threshold(const Spectrum& s, int t, double effective_samples);

}  // namespace haar_sentinel
