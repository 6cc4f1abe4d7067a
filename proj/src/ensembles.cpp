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

#include "haar_sentinel/ensembles.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "haar_sentinel/dirichlet.h"

namespace haar_sentinel {

namespace {

DirichletParams counterexample_params(int qubits) {
  // Ordered by ascending basis index, i.e. k = n, n-1, ..., 0.
  std::vector<double> alpha;
  double binom = 1.0;
  std::vector<double> by_k;
  for (int k = 0; k <= qubits; ++k) {
    by_k.push_back(0.5 * binom);
    binom = binom * (qubits - k) / (k + 1);
  }
  alpha.assign(by_k.rbegin(), by_k.rend());
  return DirichletParams(std::move(alpha));
}

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > 20) {
    throw std::invalid_argument("counterexample: qubit count " +
                                std::to_string(qubits) + " outside [1, 20]");
  }
}

// Uniform point on the real unit sphere: squared coordinates are Dir(1/2).
Eigen::VectorXcd haar_amplitudes(std::size_t dimension, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd z(static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  return z / z.norm();
}

Eigen::VectorXcd dense_amplitudes(const EnsembleSpec& spec, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(spec.dimension);
  switch (spec.kind) {
    case EnsembleKind::haar:
      return haar_amplitudes(spec.dimension, rng);
    case EnsembleKind::counterexample: {
      const auto params = counterexample_params(spec.qubits);
      std::vector<double> p(params.size());
      sample_dirichlet_into(params, rng, p);
      const auto support = counterexample_support(spec.qubits);
      Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n);
      for (std::size_t j = 0; j < support.size(); ++j) {
        amps[static_cast<Eigen::Index>(support[j])] = std::sqrt(p[j]);
      }
      return amps;
    }
    case EnsembleKind::fixed_basis_state: {
      Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n);
      amps[static_cast<Eigen::Index>(spec.basis_index)] = 1.0;
      return amps;
    }
    case EnsembleKind::dirichlet_amplitudes: {
      const DirichletParams params(
          spec.alpha.empty() ? std::vector<double>(spec.dimension, 0.5) : spec.alpha);
      std::vector<double> x(params.size());
      sample_dirichlet_into(params, rng, x);
      Eigen::VectorXcd amps(n);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double modulus = std::sqrt(x[static_cast<std::size_t>(i)]);
        amps[i] = spec.random_phases ? std::polar(modulus, phase(rng))
                                     : std::complex<double>(modulus, 0.0);
      }
      return amps;
    }
  }
  throw std::logic_error("unhandled ensemble kind");
}

double weighted_mass(const Eigen::VectorXcd& amps, std::span<const double> a) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    total += a[static_cast<std::size_t>(i)] * std::norm(amps[i]);
  }
  return total;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("state: empty amplitude vector");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("state: squared norm " + std::to_string(norm2) +
                                " differs from 1");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("state: zero vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis_state(std::size_t dimension, std::size_t index) {
  if (index >= dimension) {
    throw std::out_of_range("basis_state: index out of range");
  }
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(amps));
}

std::string_view to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::haar:
      return "haar";
    case EnsembleKind::counterexample:
      return "counterexample";
    case EnsembleKind::fixed_basis_state:
      return "fixed_basis_state";
    case EnsembleKind::dirichlet_amplitudes:
      return "dirichlet_amplitudes";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(std::string_view name) {
  if (name == "haar") return EnsembleKind::haar;
  if (name == "counterexample") return EnsembleKind::counterexample;
  if (name == "fixed_basis_state") return EnsembleKind::fixed_basis_state;
  if (name == "dirichlet_amplitudes") return EnsembleKind::dirichlet_amplitudes;
  throw std::invalid_argument("unknown ensemble kind '" + std::string(name) + "'");
}

EnsembleSpec EnsembleSpec::haar(std::size_t dimension, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::haar;
  spec.dimension = dimension;
  spec.seed = seed;
  spec.validate();
  return spec;
}

EnsembleSpec EnsembleSpec::counterexample(int qubits, std::uint64_t seed) {
  check_qubits(qubits);
  EnsembleSpec spec;
  spec.kind = EnsembleKind::counterexample;
  spec.qubits = qubits;
  spec.dimension = std::size_t{1} << qubits;
  spec.seed = seed;
  return spec;
}

EnsembleSpec EnsembleSpec::fixed_basis_state(std::size_t dimension,
                                             std::size_t index,
                                             std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::fixed_basis_state;
  spec.dimension = dimension;
  spec.basis_index = index;
  spec.seed = seed;
  spec.validate();
  return spec;
}

EnsembleSpec EnsembleSpec::dirichlet_amplitudes(std::size_t dimension,
                                                std::vector<double> alpha,
                                                bool random_phases,
                                                std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::dirichlet_amplitudes;
  spec.dimension = dimension;
  spec.alpha = std::move(alpha);
  spec.random_phases = random_phases;
  spec.seed = seed;
  spec.validate();
  return spec;
}

void EnsembleSpec::validate() const {
  if (dimension > kMaxDimension) {
    throw std::invalid_argument("ensemble: dimension exceeds 2^20");
  }
  switch (kind) {
    case EnsembleKind::haar:
      if (dimension < 2) {
        throw std::invalid_argument("ensemble: haar needs dimension >= 2");
      }
      break;
    case EnsembleKind::counterexample:
      check_qubits(qubits);
      if (dimension != (std::size_t{1} << qubits)) {
        throw std::invalid_argument("ensemble: counterexample needs N = 2^n");
      }
      break;
    case EnsembleKind::fixed_basis_state:
      if (dimension < 1 || basis_index >= dimension) {
        throw std::invalid_argument("ensemble: basis index out of range");
      }
      break;
    case EnsembleKind::dirichlet_amplitudes:
      if (dimension < 2) {
        throw std::invalid_argument(
            "ensemble: dirichlet_amplitudes needs dimension >= 2");
      }
      if (!alpha.empty()) {
        if (alpha.size() != dimension) {
          throw std::invalid_argument(
              "ensemble: alpha length differs from dimension");
        }
        DirichletParams check(alpha);
      }
      break;
  }
}

EnsembleSpec EnsembleSpec::with_seed(std::uint64_t new_seed) const {
  EnsembleSpec copy = *this;
  copy.seed = new_seed;
  return copy;
}

StateVector sample_haar_state(std::size_t dimension, Rng& rng) {
  if (dimension < 2 || dimension > kMaxDimension) {
    throw std::invalid_argument("sample_haar_state: dimension " +
                                std::to_string(dimension) + " outside [2, 2^20]");
  }
  return StateVector::normalized(haar_amplitudes(dimension, rng));
}

std::vector<std::size_t> counterexample_support(int qubits) {
  check_qubits(qubits);
  std::vector<std::size_t> support;
  for (int k = qubits; k >= 0; --k) {
    support.push_back((std::size_t{1} << (qubits - k)) - 1);
  }
  return support;
}

StateVector counterexample_state(int qubits, Rng& rng) {
  const auto spec = EnsembleSpec::counterexample(qubits, 0);
  return StateVector(dense_amplitudes(spec, rng));
}

StateVector sample_state(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  return StateVector(dense_amplitudes(spec, rng));
}

double expectation(const StateVector& psi, const EigenAssignment& a) {
  if (psi.dimension() != a.dimension()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return weighted_mass(psi.amplitudes(), a.values());
}

double expectation_rotated(const StateVector& psi, const EigenAssignment& a,
                           const Unitary& basis) {
  if (psi.dimension() != a.dimension() ||
      static_cast<std::size_t>(basis.dimension()) != a.dimension()) {
    throw std::invalid_argument("expectation_rotated: dimension mismatch");
  }
  const Eigen::VectorXcd rotated = basis.matrix().adjoint() * psi.amplitudes();
  return weighted_mass(rotated, a.values());
}

namespace detail {

void check_sampling_inputs(const EnsembleSpec& spec, const EigenAssignment& a,
                           const Unitary* basis, std::size_t samples) {
  spec.validate();
  if (samples < 1) {
    throw std::invalid_argument("generate_expectation_samples: M must be >= 1");
  }
  if (a.dimension() != spec.dimension) {
    throw std::invalid_argument(
        "generate_expectation_samples: assignment dimension " +
        std::to_string(a.dimension()) + " != ensemble dimension " +
        std::to_string(spec.dimension));
  }
  if (basis != nullptr &&
      static_cast<std::size_t>(basis->dimension()) != spec.dimension) {
    throw std::invalid_argument(
        "generate_expectation_samples: basis dimension mismatch");
  }
}

double sample_expectation(const EnsembleSpec& spec, const EigenAssignment& a,
                          const Unitary* basis, Rng& rng) {
  if (spec.kind == EnsembleKind::counterexample && basis == nullptr) {
    // Sparse path: only n + 1 amplitudes are non-zero. Accumulates in
    // ascending index order, matching the dense sum bit for bit.
    const auto params = counterexample_params(spec.qubits);
    std::vector<double> p(params.size());
    sample_dirichlet_into(params, rng, p);
    double total = 0.0;
    std::size_t j = 0;
    for (int k = spec.qubits; k >= 0; --k, ++j) {
      const double amp = std::sqrt(p[j]);
      total += a[(std::size_t{1} << (spec.qubits - k)) - 1] * (amp * amp);
    }
    return total;
  }
  const Eigen::VectorXcd amps = dense_amplitudes(spec, rng);
  if (basis == nullptr) return weighted_mass(amps, a.values());
  const Eigen::VectorXcd rotated = basis->matrix().adjoint() * amps;
  return weighted_mass(rotated, a.values());
}

}  // namespace detail

std::vector<double> generate_expectation_samples(const EnsembleSpec& spec,
                                                 const EigenAssignment& a,
                                                 const Unitary* basis,
                                                 std::size_t samples) {
  detail::check_sampling_inputs(spec, a, basis, samples);
  std::vector<double> out(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
    out[static_cast<std::size_t>(i)] = detail::sample_expectation(spec, a, basis, rng);
  }
  return out;
}

std::vector<double> eigenspace_masses(const EnsembleSpec& spec, const Spectrum& s,
                                      std::size_t samples) {
  spec.validate();
  if (spec.dimension != s.dimension()) {
    throw std::invalid_argument("eigenspace_masses: dimension mismatch");
  }
  if (samples < 1) throw std::invalid_argument("eigenspace_masses: M must be >= 1");
  std::vector<std::size_t> level_of(s.dimension());
  {
    std::size_t index = 0;
    for (std::size_t level = 0; level < s.num_levels(); ++level) {
      for (std::size_t r = 0; r < s.multiplicities()[level]; ++r) {
        level_of[index++] = level;
      }
    }
  }
  const std::size_t levels = s.num_levels();
  std::vector<double> per_sample(samples * levels, 0.0);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
    const Eigen::VectorXcd amps = dense_amplitudes(spec, rng);
    double* row = per_sample.data() + static_cast<std::size_t>(i) * levels;
    for (Eigen::Index j = 0; j < amps.size(); ++j) {
      row[level_of[static_cast<std::size_t>(j)]] += std::norm(amps[j]);
    }
  }
  std::vector<double> mean(levels, 0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t level = 0; level < levels; ++level) {
      mean[level] += per_sample[i * levels + level];
    }
  }
  for (double& m : mean) m /= static_cast<double>(samples);
  return mean;
}

}  // namespace haar_sentinel
