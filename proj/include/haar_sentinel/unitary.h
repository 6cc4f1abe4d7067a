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

#include <Eigen/Dense>

namespace haar_sentinel {

inline constexpr double kUnitaryTolerance = 1e-10;

/// Square complex matrix whose columns form an orthonormal basis, checked on
/// construction to kUnitaryTolerance (column norms and pairwise overlaps).
class Unitary {
 public:
  explicit Unitary(Eigen::MatrixXcd columns);

  static Unitary identity(Eigen::Index n);

  const Eigen::MatrixXcd& matrix() const { return columns_; }
  Eigen::Index dimension() const { return columns_.rows(); }

 private:
  Eigen::MatrixXcd columns_;
};

/// Largest entry of |U^dagger U - I|.
double unitarity_defect(const Eigen::MatrixXcd& columns);

}  // namespace haar_sentinel
