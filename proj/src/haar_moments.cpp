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

#include "haar_sentinel/haar_moments.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "haar_sentinel/detail/compensated_sum.h"
#include "haar_sentinel/dirichlet.h"
#include "haar_sentinel/errors.h"

namespace haar_sentinel {

namespace {

void require_order(int t, const char* where) {
  if (t < 1) {
    throw std::invalid_argument(std::string(where) + ": order t must be >= 1");
  }
}

void visit_compositions(int remaining, std::size_t level,
                        const std::vector<std::size_t>& support,
                        std::vector<int>& k,
                        const std::function<void(std::span<const int>)>& visit) {
  const std::size_t idx = support[level];
  if (level + 1 == support.size()) {
    k[idx] = remaining;
    visit(k);
    k[idx] = 0;
    return;
  }
  for (int here = remaining; here >= 0; --here) {
    k[idx] = here;
    visit_compositions(remaining - here, level + 1, support, k, visit);
  }
  k[idx] = 0;
}

// Per supported level i, table[i][k] = k log(lambda_i) - log k! +
// log rising(m_i/2, k); a composition's log-term is the sum of its entries
// plus the shared prefactor log t! - log rising(N/2, t).
struct TermTables {
  std::vector<std::vector<double>> rows;
  double log_prefactor = 0.0;
};

TermTables build_tables(const Spectrum& s, const std::vector<std::size_t>& support,
                        int t) {
  std::vector<double> log_factorial(t + 1, 0.0);
  for (int k = 1; k <= t; ++k) log_factorial[k] = log_factorial[k - 1] + std::log(k);

  TermTables tables;
  tables.rows.reserve(support.size());
  for (std::size_t level : support) {
    const double log_lambda = std::log(s.eigenvalues()[level]);
    const double half_mult = 0.5 * static_cast<double>(s.multiplicities()[level]);
    std::vector<double> row(t + 1);
    double rising = 0.0;
    for (int k = 0; k <= t; ++k) {
      if (k > 0) rising += std::log(half_mult + (k - 1));
      row[k] = k * log_lambda - log_factorial[k] + rising;
    }
    tables.rows.push_back(std::move(row));
  }
  tables.log_prefactor =
      log_factorial[t] -
      log_rising_factorial(0.5 * static_cast<double>(s.dimension()), t);
  return tables;
}

// Sums exp(log_prefix + sum of table entries) over every split of
// `remaining` among levels [level, end).
void accumulate_terms(const TermTables& tables, std::size_t level, int remaining,
                      double log_prefix, detail::CompensatedSum& sum) {
  const auto& row = tables.rows[level];
  if (level + 1 == tables.rows.size()) {
    sum.add(std::exp(log_prefix + row[remaining]));
    return;
  }
  for (int here = remaining; here >= 0; --here) {
    accumulate_terms(tables, level + 1, remaining - here, log_prefix + row[here],
                     sum);
  }
}

}  // namespace

std::string_view to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::exact:
      return "exact";
    case MomentMethod::lower_bound:
      return "lower_bound";
    case MomentMethod::upper_bound:
      return "upper_bound";
  }
  return "unknown";
}

std::uint64_t composition_count(int t, std::size_t g) {
  if (t < 0) return 0;
  if (g == 0) return t == 0 ? 1 : 0;
  // binomial(t + g - 1, min(t, g - 1)) with overflow saturation.
  const std::uint64_t n = static_cast<std::uint64_t>(t) + g - 1;
  const std::uint64_t r = std::min<std::uint64_t>(t, g - 1);
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    value = value * (n - r + i) / i;
    if (value > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(value);
}

void for_each_composition(int t, const std::vector<bool>& support_mask,
                          const std::function<void(std::span<const int>)>& visit) {
  if (t < 0) throw std::invalid_argument("compositions: negative order");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < support_mask.size(); ++i) {
    if (support_mask[i]) support.push_back(i);
  }
  std::vector<int> k(support_mask.size(), 0);
  if (support.empty()) {
    if (t == 0) visit(k);
    return;
  }
  visit_compositions(t, 0, support, k, visit);
}

std::vector<std::vector<int>> compositions(int t, std::size_t num_levels,
                                           const std::vector<bool>& support_mask) {
  if (support_mask.size() != num_levels) {
    throw std::invalid_argument("compositions: mask length != level count");
  }
  std::vector<std::vector<int>> out;
  for_each_composition(t, support_mask, [&](std::span<const int> k) {
    out.emplace_back(k.begin(), k.end());
  });
  return out;
}

MomentValue exact_moment(const Spectrum& s, int t, std::uint64_t term_budget) {
  require_order(t, "exact_moment");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < s.num_levels(); ++i) {
    if (s.eigenvalues()[i] > 0.0) support.push_back(i);
  }
  const std::uint64_t terms = composition_count(t, support.size());
  if (terms > term_budget) {
    throw TermBudgetExceeded("exact_moment: " + std::to_string(terms) +
                             " terms exceed the budget of " +
                             std::to_string(term_budget));
  }
  if (support.empty()) return {t, 0.0, MomentMethod::exact};

  const TermTables tables = build_tables(s, support, t);
  const auto& first = tables.rows.front();

  if (support.size() == 1) {
    return {t, std::exp(tables.log_prefactor + first[t]), MomentMethod::exact};
  }

  // One partial sum per value of the first supported exponent; combined in a
  // fixed order so the result is independent of scheduling.
  std::vector<detail::CompensatedSum> partial(t + 1);
#pragma omp parallel for schedule(dynamic, 1)
  for (int head = 0; head <= t; ++head) {
    accumulate_terms(tables, 1, t - head, tables.log_prefactor + first[head],
                     partial[head]);
  }
  detail::CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return {t, total.value(), MomentMethod::exact};
}

MomentBounds moment_bounds(const Spectrum& s, int t) {
  require_order(t, "moment_bounds");
  const double n = static_cast<double>(s.dimension());
  const double base = std::pow(trace(s) / n, t);
  const double min_mult = static_cast<double>(s.min_multiplicity());
  const double t2 = static_cast<double>(t) * t;
  const double factor =
      1.0 + t2 +
      0.375 * t2 * static_cast<double>(s.num_levels()) / (min_mult * min_mult);
  return {t, base, base * factor, base, 10.0 * t / n};
}

double haar_variance(const Spectrum& s, int t, std::uint64_t term_budget) {
  require_order(t, "haar_variance");
  const double mu_t = exact_moment(s, t, term_budget).value;
  const double mu_2t = exact_moment(s, 2 * t, term_budget).value;
  return std::max(0.0, mu_2t - mu_t * mu_t);
}

double variance_correction(const Spectrum& s) {
  const double min_mult = static_cast<double>(s.min_multiplicity());
  return 1.0 + 0.375 * static_cast<double>(s.num_levels()) / (min_mult * min_mult);
}

std::uint64_t required_samples(const Spectrum& s, int t, double epsilon) {
  require_order(t, "required_samples");
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("required_samples: epsilon must be > 0");
  }
  const double base = std::pow(trace(s) / static_cast<double>(s.dimension()), t);
  const double scale = 2.0 * t / epsilon * base;
  const double m = scale * scale * variance_correction(s);
  // Snap values within rounding noise of an integer before taking the ceiling,
  // otherwise 225000.00000000003 would become 225001.
  const double nearest = std::round(m);
  if (std::abs(m - nearest) <= 64.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(m));
}

double sampling_threshold(const Spectrum& s, int t, double effective_samples) {
  require_order(t, "sampling_threshold");
  if (!(effective_samples > 0.0)) {
    throw std::invalid_argument("sampling_threshold: sample count must be > 0");
  }
  const double base = std::pow(trace(s) / static_cast<double>(s.dimension()), t);
  return base * 2.0 * t / std::sqrt(effective_samples) *
         std::sqrt(variance_correction(s));
}

}  // namespace haar_sentinel
