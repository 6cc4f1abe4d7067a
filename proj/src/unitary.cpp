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

#include "haar_sentinel/unitary.h"

#include <stdexcept>
#include <string>

namespace haar_sentinel {

double unitarity_defect(const Eigen::MatrixXcd& columns) {
  const Eigen::MatrixXcd gram = columns.adjoint() * columns;
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(columns.cols(), columns.cols());
  return (gram - eye).cwiseAbs().maxCoeff();
}

Unitary::Unitary(Eigen::MatrixXcd columns) : columns_(std::move(columns)) {
  if (columns_.rows() == 0 || columns_.rows() != columns_.cols()) {
    throw std::invalid_argument("unitary: matrix must be square and non-empty");
  }
  const double defect = unitarity_defect(columns_);
  if (defect > kUnitaryTolerance) {
    throw std::invalid_argument("unitary: columns are not orthonormal (defect " +
                                std::to_string(defect) + ")");
  }
}

Unitary Unitary::identity(Eigen::Index n) {
  return Unitary(Eigen::MatrixXcd::Identity(n, n));
}

}  // namespace haar_sentinel
