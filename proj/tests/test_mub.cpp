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

#include <gtest/gtest.h>

#include <cmath>

#include "haar_sentinel/errors.h"
#include "haar_sentinel/mub.h"

namespace hs = haar_sentinel;

namespace {

// Worst | |<u_i|v_j>|^2 - 1/N | over all column pairs, computed entry by entry.
double overlap_deviation(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  const auto n = u.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      std::complex<double> inner = 0.0;
      for (Eigen::Index r = 0; r < n; ++r) inner += std::conj(u(r, i)) * v(r, j);
      worst = std::max(worst, std::abs(std::norm(inner) - 1.0 / static_cast<double>(n)));
    }
  }
  return worst;
}

}  // namespace

class CompleteSet : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CompleteSet, IsOrthonormalAndPairwiseUnbiased) {
  const std::size_t n = GetParam();
  ASSERT_TRUE(hs::mub_dimension_supported(n));
  const auto set = hs::mub_complete_set(n);
  ASSERT_EQ(set.size(), n + 1);
  ASSERT_EQ(set.dimension(), n);
  double worst = 0.0;
  for (std::size_t a = 0; a < set.size(); ++a) {
    const auto& u = set.bases()[a].matrix();
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    EXPECT_LE((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      worst = std::max(worst, overlap_deviation(u, set.bases()[b].matrix()));
    }
  }
  EXPECT_LE(worst, 1e-10);
  EXPECT_NEAR(set.max_deviation(), worst, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Mub, CompleteSet, ::testing::Values(2, 3, 4, 5, 7, 11, 13));

TEST(Mub, UnsupportedDimensionsThrow) {
  for (std::size_t n : {6u, 8u, 9u, 10u, 12u}) {
    EXPECT_FALSE(hs::mub_dimension_supported(n));
    EXPECT_THROW(hs::mub_complete_set(n), hs::UnsupportedDimension);
  }
  EXPECT_FALSE(hs::mub_dimension_supported(1));
}

TEST(Mub, CheckDetectsBiasedPairs) {
  const auto set = hs::mub_complete_set(3);
  const auto same = hs::check_mub(set.bases()[0], set.bases()[0]);
  EXPECT_FALSE(same.unbiased);
  EXPECT_NEAR(same.max_deviation, 2.0 / 3.0, 1e-12);
  EXPECT_TRUE(hs::check_mub(set.bases()[0], set.bases()[2]).unbiased);
}

TEST(Mub, SetRejectsWrongCountAndBiasedMembers) {
  const auto set = hs::mub_complete_set(3);
  std::vector<hs::MubBasis> short_list(set.bases().begin(), set.bases().begin() + 3);
  EXPECT_THROW(hs::MubSet{short_list}, std::invalid_argument);
  std::vector<hs::MubBasis> repeated = set.bases();
  repeated[3] = repeated[1];
  EXPECT_THROW(hs::MubSet{repeated}, std::invalid_argument);
  EXPECT_THROW(hs::MubBasis(Eigen::MatrixXcd::Identity(1, 1), "one"), std::invalid_argument);
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(2, 2);
  not_unitary(0, 1) = 0.5;
  EXPECT_THROW(hs::MubBasis(not_unitary, "bad"), std::invalid_argument);
}
