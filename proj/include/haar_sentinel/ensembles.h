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

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "haar_sentinel/rng.h"
#include "haar_sentinel/spectrum.h"
#include "haar_sentinel/unitary.h"

namespace haar_sentinel {

/// Unit-norm pure state, dense amplitudes in the reference basis.
class StateVector {
 public:
  /// Throws std::invalid_argument unless sum |a_i|^2 = 1 within 1e-12.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// Rescales a non-zero vector to unit norm.
  static StateVector normalized(Eigen::VectorXcd amplitudes);
  static StateVector basis_state(std::size_t dimension, std::size_t index);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }

 private:
  struct Trusted {};
  StateVector(Eigen::VectorXcd amplitudes, Trusted)
      : amplitudes_(std::move(amplitudes)) {}

  Eigen::VectorXcd amplitudes_;
};

enum class EnsembleKind { haar, counterexample, fixed_basis_state, dirichlet_amplitudes };

std::string_view to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(std::string_view name);

/// Recipe for a seeded family of states.
///
/// - haar: uniform on the real unit sphere in dimension N (normalised real
///   Gaussian vectors), whose squared amplitudes are Dir(1/2).
/// - counterexample: on n qubits, sum_k sqrt(p_k) |0>^k |1>^(n-k) with
///   p ~ Dir(binomial(n, k) / 2). Indistinguishable from Haar through the
///   number operator, yet supported on only n + 1 basis states.
/// - fixed_basis_state: always |basis_index>.
/// - dirichlet_amplitudes: moduli sqrt(x), x ~ Dir(alpha) (alpha defaults to
///   1/2 everywhere), with optional uniform random phases.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::haar;
  std::size_t dimension = 2;
  int qubits = 0;
  std::size_t basis_index = 0;
  std::vector<double> alpha;
  bool random_phases = false;
  std::uint64_t seed = 0;

  static EnsembleSpec haar(std::size_t dimension, std::uint64_t seed);
  static EnsembleSpec counterexample(int qubits, std::uint64_t seed);
  static EnsembleSpec fixed_basis_state(std::size_t dimension, std::size_t index,
                                        std::uint64_t seed = 0);
  static EnsembleSpec dirichlet_amplitudes(std::size_t dimension,
                                           std::vector<double> alpha,
                                           bool random_phases, std::uint64_t seed);

  /// Throws std::invalid_argument when parameters are inconsistent.
  void validate() const;
  EnsembleSpec with_seed(std::uint64_t new_seed) const;
};

StateVector sample_haar_state(std::size_t dimension, Rng& rng);

/// Basis indices carrying the counterexample state, ascending:
/// 0^k 1^(n-k) read as a big-endian bitstring, i.e. 2^(n-k) - 1.
std::vector<std::size_t> counterexample_support(int qubits);

StateVector counterexample_state(int qubits, Rng& rng);

StateVector sample_state(const EnsembleSpec& spec, Rng& rng);

/// <psi|O|psi> = sum_i a_i |psi_i|^2.
double expectation(const StateVector& psi, const EigenAssignment& a);

/// Expectation of U diag(a) U^dagger: sum_i a_i |(U^dagger psi)_i|^2.
double expectation_rotated(const StateVector& psi, const EigenAssignment& a,
                           const Unitary& basis);

/// M expectation values; sample i draws from Rng(derive_seed(spec.seed, i)),
/// so the output is a pure function of (spec, a, basis, M) whatever the
/// OpenMP thread count. `basis` may be null for the reference basis.
std::vector<double> generate_expectation_samples(const EnsembleSpec& spec,
                                                 const EigenAssignment& a,
                                                 const Unitary* basis,
                                                 std::size_t samples);

/// Ensemble mean of the squared-amplitude mass in each eigenspace of `s`
/// (canonical assignment), one entry per level.
std::vector<double> eigenspace_masses(const EnsembleSpec& spec, const Spectrum& s,
                                      std::size_t samples);

namespace detail {

/// Single-sample kernel shared by the parallel and reference generators.
double sample_expectation(const EnsembleSpec& spec, const EigenAssignment& a,
                          const Unitary* basis, Rng& rng);

void check_sampling_inputs(const EnsembleSpec& spec, const EigenAssignment& a,
                           const Unitary* basis, std::size_t samples);

}  // namespace detail

}  // namespace haar_sentinel
