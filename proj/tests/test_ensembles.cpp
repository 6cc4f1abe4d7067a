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
#include <omp.h>

#include <cmath>

#include "haar_sentinel/ensembles.h"
#include "haar_sentinel/haar_moments.h"
#include "haar_sentinel/reference.h"
#include "support/stats.h"

namespace hs = haar_sentinel;

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST(StateVector, EnforcesUnitNorm) {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(hs::StateVector{v}, std::invalid_argument);
  const auto psi = hs::StateVector::normalized(v);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(hs::StateVector::normalized(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  const auto e2 = hs::StateVector::basis_state(4, 2);
  EXPECT_EQ(e2.amplitudes()[2], std::complex<double>(1.0, 0.0));
  EXPECT_THROW(hs::StateVector::basis_state(4, 4), std::out_of_range);
}

TEST(EnsembleSpec, ValidationAndNames) {
  EXPECT_THROW(hs::EnsembleSpec::haar(1, 0), std::invalid_argument);
  EXPECT_THROW(hs::EnsembleSpec::counterexample(0, 0), std::invalid_argument);
  EXPECT_THROW(hs::EnsembleSpec::counterexample(21, 0), std::invalid_argument);
  EXPECT_THROW(hs::EnsembleSpec::fixed_basis_state(4, 4), std::invalid_argument);
  EXPECT_THROW(hs::EnsembleSpec::dirichlet_amplitudes(3, {1.0, 2.0}, false, 0),
               std::invalid_argument);
  EXPECT_THROW(hs::EnsembleSpec::dirichlet_amplitudes(2, {1.0, -2.0}, false, 0),
               std::invalid_argument);
  for (auto kind : {hs::EnsembleKind::haar, hs::EnsembleKind::counterexample,
                    hs::EnsembleKind::fixed_basis_state,
                    hs::EnsembleKind::dirichlet_amplitudes}) {
    EXPECT_EQ(hs::ensemble_kind_from_string(hs::to_string(kind)), kind);
  }
  EXPECT_THROW(hs::ensemble_kind_from_string("gaussian"), std::invalid_argument);
  EXPECT_EQ(hs::EnsembleSpec::haar(3, 1).with_seed(9).seed, 9u);
}

TEST(HaarSampler, SquaredAmplitudesFollowBetaHalf) {
  const std::size_t n = 5;
  const std::size_t draws = 30000;
  hs::Rng rng(31);
  std::vector<double> first;
  std::vector<double> last;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto psi = hs::sample_haar_state(n, rng);
    first.push_back(std::norm(psi.amplitudes()[0]));
    last.push_back(std::norm(psi.amplitudes()[n - 1]));
  }
  const double a = 0.5;
  const double b = (n - 1) / 2.0;
  for (const auto* coords : {&first, &last}) {
    const double d = testsupport::ks_one_sample(
        *coords, [&](double x) { return testsupport::beta_cdf(a, b, x); });
    EXPECT_GT(testsupport::ks_pvalue(d, static_cast<double>(draws)), 0.005);
  }
}

TEST(Counterexample, SupportAndNormalisation) {
  EXPECT_EQ(hs::counterexample_support(3), (std::vector<std::size_t>{0, 1, 3, 7}));
  hs::Rng rng(4);
  const auto psi = hs::counterexample_state(6, rng);
  EXPECT_NEAR(psi.amplitudes().squaredNorm(), 1.0, 1e-12);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    if (std::abs(psi.amplitudes()[i]) > 0.0) ++nonzero;
  }
  EXPECT_LE(nonzero, 7);
}

TEST(Counterexample, MatchesHaarMomentsThroughTheNumberOperator) {
  const int n = 5;
  const auto a = hs::number_operator_diagonal(n);
  const auto spec = hs::EnsembleSpec::counterexample(n, 123);
  const std::size_t m = 200000;
  const auto values = hs::generate_expectation_samples(spec, a, nullptr, m);
  const hs::Spectrum s = hs::number_operator(n);
  for (int t = 1; t <= 3; ++t) {
    double sum = 0.0;
    double sq = 0.0;
    for (double v : values) {
      const double p = std::pow(v, t);
      sum += p;
      sq += p * p;
    }
    const double mean = sum / m;
    const double se = std::sqrt((sq / m - mean * mean) / m);
    EXPECT_NEAR(mean, hs::exact_moment(s, t).value, 5.0 * se) << "t=" << t;
  }
}

TEST(Counterexample, SparsePathMatchesDenseStateBitForBit) {
  const int n = 6;
  const auto a = hs::number_operator_diagonal(n);
  const auto spec = hs::EnsembleSpec::counterexample(n, 8);
  const auto values = hs::generate_expectation_samples(spec, a, nullptr, 50);
  for (std::size_t i = 0; i < values.size(); ++i) {
    hs::Rng rng(hs::derive_seed(spec.seed, i));
    EXPECT_EQ(values[i], hs::expectation(hs::sample_state(spec, rng), a));
  }
}

TEST(Expectation, BasisStatesAndRotations) {
  const hs::EigenAssignment a({0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(hs::expectation(hs::StateVector::basis_state(4, 2), a), 2.0);
  const auto fixed = hs::EnsembleSpec::fixed_basis_state(4, 3);
  const auto values = hs::generate_expectation_samples(fixed, a, nullptr, 10);
  for (double v : values) EXPECT_EQ(v, 3.0);

  hs::Rng rng(3);
  const auto psi = hs::sample_haar_state(4, rng);
  const hs::Unitary id = hs::Unitary::identity(4);
  EXPECT_NEAR(hs::expectation_rotated(psi, a, id), hs::expectation(psi, a), 1e-15);
  EXPECT_THROW(hs::expectation(psi, hs::EigenAssignment({1.0, 2.0})), std::invalid_argument);
}

TEST(Expectation, RotationByFourierBasisOfBasisStateIsFlat) {
  const std::size_t n = 5;
  Eigen::MatrixXcd f(n, n);
  const double pi = std::acos(-1.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      f(r, c) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * pi * r * c / n);
    }
  }
  const hs::Unitary u(f);
  const hs::EigenAssignment a({0.0, 1.0, 2.0, 3.0, 4.0});
  EXPECT_NEAR(hs::expectation_rotated(hs::StateVector::basis_state(n, 1), a, u), 2.0, 1e-12);
}

TEST(Generation, DeterministicAndThreadIndependent) {
  const auto a = hs::expand(hs::number_operator(4));
  const auto spec = hs::EnsembleSpec::haar(16, 77);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = hs::generate_expectation_samples(spec, a, nullptr, 3000);
  omp_set_num_threads(6);
  const auto six = hs::generate_expectation_samples(spec, a, nullptr, 3000);
  omp_set_num_threads(saved);
  EXPECT_EQ(one, six);
  EXPECT_EQ(one, hs::reference::generate_expectation_samples(spec, a, nullptr, 3000));
  EXPECT_NE(one, hs::generate_expectation_samples(spec.with_seed(78), a, nullptr, 3000));
  // Prefixes are stable: sample i depends only on (seed, i).
  const auto shorter = hs::generate_expectation_samples(spec, a, nullptr, 100);
  EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), one.begin()));
}

TEST(Generation, HaarMeanIsTraceOverDimension) {
  const auto s = hs::Spectrum({0.0, 1.0}, {1, 1});
  const auto values =
      hs::generate_expectation_samples(hs::EnsembleSpec::haar(2, 5), hs::expand(s), nullptr, 100000);
  // Var of Beta(1/2,1/2) is 1/8.
  EXPECT_NEAR(mean_of(values), 0.5, 3.0 * std::sqrt(0.125 / 100000));
}

TEST(Generation, DirichletAmplitudesWithDefaultAlphaMatchHaarMoments) {
  const hs::Spectrum s = hs::number_operator(3);
  const auto spec = hs::EnsembleSpec::dirichlet_amplitudes(8, {}, true, 12);
  const auto values = hs::generate_expectation_samples(spec, hs::expand(s), nullptr, 200000);
  double sq = 0.0;
  for (double v : values) sq += v * v;
  const double mu2 = hs::exact_moment(s, 2).value;
  EXPECT_NEAR(sq / values.size(), mu2, 0.02 * mu2);
}

TEST(EigenspaceMasses, HaarMassesAreProportionalToMultiplicity) {
  const hs::Spectrum s({0.0, 1.0, 4.0}, {5, 2, 1});
  const auto masses = hs::eigenspace_masses(hs::EnsembleSpec::haar(8, 3), s, 50000);
  ASSERT_EQ(masses.size(), 3u);
  EXPECT_NEAR(masses[0], 5.0 / 8.0, 0.01);
  EXPECT_NEAR(masses[1], 2.0 / 8.0, 0.01);
  EXPECT_NEAR(masses[2], 1.0 / 8.0, 0.01);
  EXPECT_NEAR(masses[0] + masses[1] + masses[2], 1.0, 1e-12);
}
