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

#include "haar_sentinel/mub.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "haar_sentinel/errors.h"

namespace haar_sentinel {

namespace {

using cd = std::complex<double>;

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Columns are basis vectors; entries are multiples of 1/2 by {+-1, +-i}.
// Joint eigenbases of the commuting two-qubit Pauli classes
// {XI, IX, XX}, {YI, IY, YY}, {XY, YZ, ZX} and {YX, ZY, XZ}.
std::vector<MubBasis> dimension_four_table() {
  const cd i{0.0, 1.0};
  const std::vector<std::vector<cd>> rows[4] = {
      {{1, 1, 1, 1}, {-1, -1, 1, 1}, {-1, 1, -1, 1}, {1, -1, -1, 1}},
      {{1, 1, 1, 1}, {-i, -i, i, i}, {-i, i, -i, i}, {-1, 1, 1, -1}},
      {{1, 1, 1, 1}, {-1, 1, 1, -1}, {-i, -i, i, i}, {-i, i, -i, i}},
      {{1, 1, 1, 1}, {-i, -i, i, i}, {-1, 1, 1, -1}, {-i, i, -i, i}},
  };
  std::vector<MubBasis> bases;
  bases.emplace_back(Eigen::MatrixXcd::Identity(4, 4), "computational");
  for (int b = 0; b < 4; ++b) {
    Eigen::MatrixXcd m(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) m(r, c) = 0.5 * rows[b][r][c];
    }
    bases.emplace_back(std::move(m), "table-" + std::to_string(b + 1));
  }
  return bases;
}

std::vector<MubBasis> dimension_two_set() {
  const double h = 1.0 / std::numbers::sqrt2;
  const cd i{0.0, 1.0};
  Eigen::MatrixXcd x(2, 2);
  x << h, h, h, -h;
  Eigen::MatrixXcd y(2, 2);
  y << h, h, h * i, -h * i;
  std::vector<MubBasis> bases;
  bases.emplace_back(Eigen::MatrixXcd::Identity(2, 2), "computational");
  bases.emplace_back(std::move(x), "balanced-real");
  bases.emplace_back(std::move(y), "balanced-imaginary");
  return bases;
}

// Odd prime p: basis r has vectors e_k with components
// omega^(r j^2 + k j) / sqrt(p), omega = exp(2 pi i / p).
std::vector<MubBasis> odd_prime_set(std::size_t p) {
  const auto n = static_cast<Eigen::Index>(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  std::vector<MubBasis> bases;
  bases.emplace_back(Eigen::MatrixXcd::Identity(n, n), "computational");
  for (std::size_t r = 0; r < p; ++r) {
    Eigen::MatrixXcd m(n, n);
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < p; ++k) {
        // Reduce the exponent mod p before forming the angle.
        const std::size_t exponent = (r * j % p * j + k * j) % p;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent) /
                             static_cast<double>(p);
        m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            std::polar(scale, angle);
      }
    }
    bases.emplace_back(std::move(m), "quadratic-" + std::to_string(r));
  }
  return bases;
}

}  // namespace

MubBasis::MubBasis(Eigen::MatrixXcd columns, std::string label)
    : unitary_([&] {
        if (columns.rows() < 2) {
          throw std::invalid_argument("mub basis: dimension must be >= 2");
        }
        return Unitary(std::move(columns));
      }()),
      label_(std::move(label)) {}

MubCheck check_mub(const MubBasis& u, const MubBasis& v) {
  if (u.dimension() != v.dimension()) {
    throw std::invalid_argument("check_mub: dimension mismatch");
  }
  const double target = 1.0 / static_cast<double>(u.dimension());
  const Eigen::MatrixXcd overlap = v.matrix().adjoint() * u.matrix();
  const double deviation =
      (overlap.cwiseAbs2().array() - target).abs().maxCoeff();
  return {deviation <= kMubTolerance, deviation};
}

MubSet::MubSet(std::vector<MubBasis> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw std::invalid_argument("mub set: no bases");
  const std::size_t n = bases_.front().dimension();
  if (bases_.size() != n + 1) {
    throw std::invalid_argument("mub set: expected N + 1 bases");
  }
  for (std::size_t a = 0; a < bases_.size(); ++a) {
    for (std::size_t b = a + 1; b < bases_.size(); ++b) {
      const MubCheck check = check_mub(bases_[a], bases_[b]);
      max_deviation_ = std::max(max_deviation_, check.max_deviation);
      if (!check.unbiased) {
        throw std::invalid_argument("mub set: bases " + bases_[a].label() +
                                    " and " + bases_[b].label() +
                                    " are not mutually unbiased");
      }
    }
  }
}

bool mub_dimension_supported(std::size_t n) { return n == 4 || is_prime(n); }

MubSet mub_complete_set(std::size_t n) {
  if (n == 2) return MubSet(dimension_two_set());
  if (n == 4) return MubSet(dimension_four_table());
  if (is_prime(n)) return MubSet(odd_prime_set(n));
  throw UnsupportedDimension("mub_complete_set: no construction available for N = " +
                             std::to_string(n) +
                             " (supported: primes and 4)");
}

}  // namespace haar_sentinel
