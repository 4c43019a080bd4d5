// Copyright 2026 The QRS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "qrs/pauli.hpp"
#include "qrs/statevector.hpp"

namespace qrs {

inline constexpr std::size_t kDenseQubitCap = 14;
inline constexpr std::size_t kIterativeQubitCap = 20;

/// Energies closer than this to E0 count toward the ground multiplicity.
inline constexpr double kDegeneracyTolerance = 1e-9;

enum class SpectrumSource { exact, dos };

struct Spectrum {
  std::vector<double> energies;                 // ascending
  std::optional<std::vector<double>> weights;   // aligned with energies
  SpectrumSource source = SpectrumSource::exact;
  std::size_t ground_multiplicity = 1;

  double ground_energy() const { return energies.front(); }
  double max_energy() const { return energies.back(); }
  /// E1 - E0 over distinct levels; 0 for a one-level spectrum.
  double gap() const;
};

/**
 * @brief Full spectrum by dense diagonalization (n <= 14).
 *
 * Qubits on which every term acts as I or Z carry conserved Z eigenvalues,
 * so the matrix is block diagonal over their bit patterns; each block is
 * diagonalized separately. With a reference state the overlap weights
 * |<ref|E_k>|^2 are returned alongside the energies.
 */
Spectrum exact_spectrum(const PauliSum& h, std::size_t n, const Statevector* reference = nullptr);

struct GroundState {
  double energy = 0.0;
  Statevector state;
  std::size_t multiplicity = 1;
};

/// Lowest eigenpair from the same block decomposition as exact_spectrum.
/// For degenerate ground levels the vector from the lowest-indexed block is
/// returned and `multiplicity` reports the degeneracy.
GroundState exact_ground_state(const PauliSum& h, std::size_t n);

struct IterativeOptions {
  double tolerance = 1e-8;       // residual ||H psi - E psi||
  std::size_t krylov_dim = 40;
  std::size_t max_restarts = 200;
  std::uint64_t seed = 7;
};

struct IterativeGroundState {
  double energy = 0.0;
  Statevector state;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

/// Matrix-free restarted Lanczos; throws std::runtime_error when the
/// residual is not below tolerance after max_restarts cycles.
IterativeGroundState ground_state_iterative(const PauliSum& h, std::size_t n,
                                            const IterativeOptions& options = {});

}  // namespace qrs
