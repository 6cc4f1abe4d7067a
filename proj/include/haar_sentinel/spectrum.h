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
#include <cstdint>
#include <span>
#include <vector>

#include "haar_sentinel/rng.h"

namespace haar_sentinel {

/// Largest dimension for which dense assignments and states are built.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 20;

/// Distinct non-negative eigenvalues with their multiplicities, kept in
/// ascending eigenvalue order. This is all the closed-form moment math needs.
class Spectrum {
 public:
  /// Validates and sorts. Throws std::invalid_argument on empty input,
  /// mismatched lengths, duplicate or negative eigenvalues, or
  /// non-positive multiplicities.
  Spectrum(std::vector<double> eigenvalues,
           std::vector<std::int64_t> multiplicities);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::span<const std::size_t> multiplicities() const {
    return multiplicities_;
  }

  std::size_t num_levels() const { return eigenvalues_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t min_multiplicity() const;
  double max_eigenvalue() const { return eigenvalues_.back(); }

  bool operator==(const Spectrum&) const = default;

 private:
  std::vector<double> eigenvalues_;
  std::vector<std::size_t> multiplicities_;
  std::size_t dimension_ = 0;
};

Spectrum make_spectrum(std::vector<double> eigenvalues,
                       std::vector<std::int64_t> multiplicities);

/// Sum of eigenvalues weighted by multiplicity.
double trace(const Spectrum& s);

/// Spectrum of sum_k (1 - Z_k)/2 on n qubits: eigenvalue k has
/// multiplicity binomial(n, k). Valid for 1 <= n <= 20.
Spectrum number_operator(int n);

/// Diagonal of an observable in its eigenbasis: entry i is the eigenvalue
/// assigned to basis state |i>.
class EigenAssignment {
 public:
  explicit EigenAssignment(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t dimension() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const EigenAssignment&) const = default;

 private:
  std::vector<double> values_;
};

/// A bijection on {0, ..., N-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);
  /// Uniform over the symmetric group (Fisher-Yates).
  static Permutation random(std::size_t n, Rng& rng);

  std::span<const std::size_t> mapping() const { return mapping_; }
  std::size_t size() const { return mapping_.size(); }
  std::size_t operator()(std::size_t i) const { return mapping_[i]; }
  bool is_identity() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// Canonical ascending assignment: each eigenvalue repeated by multiplicity.
EigenAssignment expand(const Spectrum& s);

/// Computational-basis diagonal of the number operator on n qubits: entry i
/// is the popcount of i.
EigenAssignment number_operator_diagonal(int n);

/// Inverse of expand: distinct values with their counts.
Spectrum collapse(const EigenAssignment& a);

/// Entry i of the result is entry p(i) of `a`.
EigenAssignment apply_permutation(const EigenAssignment& a,
                                  const Permutation& p);

/// Diagonal of O - P O P for the transposition P = (i j). The |j> entry is
/// positive when a[j] > a[i].
std::vector<double> projector_difference(const EigenAssignment& a,
                                         std::size_t i, std::size_t j);

}  // namespace haar_sentinel
