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

#include <string>
#include <vector>

#include "haar_sentinel/unitary.h"

namespace haar_sentinel {

inline constexpr double kMubTolerance = 1e-10;

/// One orthonormal basis of a MUB set; columns are the basis vectors.
class MubBasis {
 public:
  /// Requires N >= 2 and a unitary matrix.
  MubBasis(Eigen::MatrixXcd columns, std::string label);

  const Unitary& unitary() const { return unitary_; }
  const Eigen::MatrixXcd& matrix() const { return unitary_.matrix(); }
  const std::string& label() const { return label_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(unitary_.dimension());
  }

 private:
  Unitary unitary_;
  std::string label_;
};

struct MubCheck {
  bool unbiased = false;
  /// max_{i,j} | |<i|V^dagger U|j>|^2 - 1/N |
  double max_deviation = 0.0;
};

MubCheck check_mub(const MubBasis& u, const MubBasis& v);

/// N + 1 pairwise mutually unbiased bases, computational basis first.
class MubSet {
 public:
  /// Verifies every pair with check_mub; throws std::invalid_argument on
  /// failure or when the count is not N + 1.
  explicit MubSet(std::vector<MubBasis> bases);

  const std::vector<MubBasis>& bases() const { return bases_; }
  std::size_t dimension() const { return bases_.front().dimension(); }
  std::size_t size() const { return bases_.size(); }

  /// Worst pairwise deviation over the whole set.
  double max_deviation() const { return max_deviation_; }

 private:
  std::vector<MubBasis> bases_;
  double max_deviation_ = 0.0;
};

bool mub_dimension_supported(std::size_t n);

/// Complete MUB set for prime N (quadratic-phase construction) or N = 4
/// (constant table). Other dimensions throw UnsupportedDimension.
MubSet mub_complete_set(std::size_t n);

}  // namespace haar_sentinel
