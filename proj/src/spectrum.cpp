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

#include "haar_sentinel/spectrum.h"

#include <bit>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace haar_sentinel {

Spectrum::Spectrum(std::vector<double> eigenvalues,
                   std::vector<std::int64_t> multiplicities) {
  if (eigenvalues.empty()) {
    throw std::invalid_argument("spectrum: no eigenvalues given");
  }
  if (eigenvalues.size() != multiplicities.size()) {
    throw std::invalid_argument(
        "spectrum: eigenvalues and multiplicities differ in length");
  }
  std::vector<std::size_t> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eigenvalues[a] < eigenvalues[b];
  });

  std::size_t total = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double value = eigenvalues[order[k]];
    const std::int64_t mult = multiplicities[order[k]];
    if (!std::isfinite(value) || value < 0.0) {
      throw std::invalid_argument("spectrum: eigenvalue " +
                                  std::to_string(value) +
                                  " is negative or not finite");
    }
    if (mult <= 0) {
      throw std::invalid_argument("spectrum: multiplicity " +
                                  std::to_string(mult) + " is not positive");
    }
    if (k > 0 && value == eigenvalues_.back()) {
      throw std::invalid_argument("spectrum: duplicate eigenvalue " +
                                  std::to_string(value));
    }
    eigenvalues_.push_back(value);
    multiplicities_.push_back(static_cast<std::size_t>(mult));
    total += static_cast<std::size_t>(mult);
    if (total > kMaxDimension) {
      throw std::invalid_argument("spectrum: dimension exceeds " +
                                  std::to_string(kMaxDimension));
    }
  }
  dimension_ = total;
}

std::size_t Spectrum::min_multiplicity() const {
  return *std::min_element(multiplicities_.begin(), multiplicities_.end());
}

Spectrum make_spectrum(std::vector<double> eigenvalues,
                       std::vector<std::int64_t> multiplicities) {
  return Spectrum(std::move(eigenvalues), std::move(multiplicities));
}

double trace(const Spectrum& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.num_levels(); ++i) {
    total += s.eigenvalues()[i] * static_cast<double>(s.multiplicities()[i]);
  }
  return total;
}

Spectrum number_operator(int n) {
  if (n < 1 || n > 20) {
    throw std::invalid_argument("number_operator: qubit count " +
                                std::to_string(n) + " outside [1, 20]");
  }
  std::vector<double> values;
  std::vector<std::int64_t> mults;
  std::int64_t binom = 1;
  for (int k = 0; k <= n; ++k) {
    values.push_back(k);
    mults.push_back(binom);
    binom = binom * (n - k) / (k + 1);
  }
  return Spectrum(std::move(values), std::move(mults));
}

EigenAssignment number_operator_diagonal(int n) {
  if (n < 1 || n > 20) {
    throw std::invalid_argument("number_operator_diagonal: qubit count " +
                                std::to_string(n) + " outside [1, 20]");
  }
  std::vector<double> values(std::size_t{1} << n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(std::popcount(i));
  }
  return EigenAssignment(std::move(values));
}

EigenAssignment::EigenAssignment(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty() || values_.size() > kMaxDimension) {
    throw std::invalid_argument("assignment: dimension " +
                                std::to_string(values_.size()) +
                                " outside [1, 2^20]");
  }
}

Permutation::Permutation(std::vector<std::size_t> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t target : mapping_) {
    if (target >= mapping_.size() || seen[target]) {
      throw std::invalid_argument("permutation: mapping is not a bijection");
    }
    seen[target] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  return Permutation(std::move(mapping));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i,
                                       std::size_t j) {
  if (i >= n || j >= n) {
    throw std::out_of_range("transposition: index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("transposition: indices must differ");
  }
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  std::swap(mapping[i], mapping[j]);
  return Permutation(std::move(mapping));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  // Explicit Fisher-Yates: std::shuffle's draw sequence is library-defined.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(mapping[i - 1], mapping[j]);
  }
  return Permutation(std::move(mapping));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] != i) return false;
  }
  return true;
}

EigenAssignment expand(const Spectrum& s) {
  if (s.dimension() > kMaxDimension) {
    throw std::invalid_argument("expand: dimension exceeds 2^20");
  }
  std::vector<double> values;
  values.reserve(s.dimension());
  for (std::size_t i = 0; i < s.num_levels(); ++i) {
    values.insert(values.end(), s.multiplicities()[i], s.eigenvalues()[i]);
  }
  return EigenAssignment(std::move(values));
}

Spectrum collapse(const EigenAssignment& a) {
  std::map<double, std::int64_t> counts;
  for (double v : a.values()) ++counts[v];
  std::vector<double> values;
  std::vector<std::int64_t> mults;
  for (const auto& [value, count] : counts) {
    values.push_back(value);
    mults.push_back(count);
  }
  return Spectrum(std::move(values), std::move(mults));
}

EigenAssignment apply_permutation(const EigenAssignment& a,
                                  const Permutation& p) {
  if (a.dimension() != p.size()) {
    throw std::invalid_argument("apply_permutation: dimension mismatch");
  }
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[p(i)];
  return EigenAssignment(std::move(out));
}

std::vector<double> projector_difference(const EigenAssignment& a,
                                         std::size_t i, std::size_t j) {
  const auto swapped =
      apply_permutation(a, Permutation::transposition(a.dimension(), i, j));
  std::vector<double> diff(a.dimension());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = a[k] - swapped[k];
  return diff;
}

}  // namespace haar_sentinel
