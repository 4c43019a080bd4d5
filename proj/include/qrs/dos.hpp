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

#include <span>
#include <string>
#include <vector>

#include "qrs/network.hpp"
#include "qrs/pauli.hpp"
#include "qrs/spectrum.hpp"
#include "qrs/statevector.hpp"

namespace qrs {

struct TrotterConfig {
  std::size_t steps = 32;
  double t_max = 10.0;
  double energy_shift = 0.0;      // evolve under H - shift * I
  std::size_t padding_factor = 8;

  /// t_max / (steps - 1).
  double dt() const;
  void validate() const;
};

/**
 * Splits H into groups of mutually commuting terms in the order used by the
 * product formula: single-qubit Z fields (and any identity), multi-qubit
 * Z strings, then the remaining terms packed greedily into commuting groups.
 * For a supply-network Hamiltonian this is {local, coupling, shock}.
 */
std::vector<PauliSum> split_commuting(const PauliSum& h);

/// One first-order step: exp(-i c P dt) for every term of every part, in order.
/// Coefficients must be real.
void trotter_step(Statevector& psi, std::span<const PauliSum> parts, double dt);

enum class Window { hann, none };

Window parse_window(std::string_view name);
std::string_view to_string(Window w);

struct DosResult {
  std::vector<double> times;
  std::vector<Complex> amplitudes;     // A(t_j) = <psi0|psi(t_j)>
  double energy_shift = 0.0;
  double dt = 0.0;
  std::size_t padding_factor = 8;
  Window window = Window::hann;
  std::vector<double> energy_grid;     // ascending
  std::vector<double> density;         // |FFT[A w]| per grid energy
  double nyquist = 0.0;                // 1 / (2 dt)
  double spectral_width_estimate = 0.0;
};

/// Times and amplitudes: A(t_0) is taken before the first step.
DosResult survival_series(const Statevector& psi0, const PauliSum& h, const TrotterConfig& config);

/**
 * @brief Windowed, zero-padded FFT of the survival amplitude.
 *
 * Bin k of the M = padding_factor * N point transform sits at
 * shift + 2 pi k / (M dt), wrapped to negative frequencies past pi / dt. The
 * transform uses the e^{+i} kernel so that a component e^{-i E t} peaks at +E.
 */
DosResult dos_reconstruct(DosResult series, Window window = Window::hann);

/// Fraction of the peak below which reconstructed bins count as empty.
inline constexpr double kDosSupportThreshold = 1e-3;

/// Bins at or above kDosSupportThreshold x peak as a weighted spectrum.
Spectrum spectrum_from_dos(const DosResult& dos, double threshold = kDosSupportThreshold);

struct NyquistCheck {
  double nyquist = 0.0;
  double spectral_width = 0.0;
  bool pass = false;
};

/// pass iff 1 / (2 dt) > spectral_width (ordinary frequency units).
NyquistCheck nyquist_check(const TrotterConfig& config, double spectral_width);

struct TailRiskCurve {
  std::vector<double> temperatures;
  std::vector<double> p_cat;
  std::vector<double> normalization;   // sum of Boltzmann probabilities per T
  std::vector<double> vix_equivalents;
  double e_ground = 0.0;
  double e_max = 0.0;
  double e_cutoff = 0.0;
  double cutoff_fraction = 0.85;
  double count_fraction = 0.0;         // share of levels at or above the cutoff
  double mean_coupling = 0.0;
  SpectrumSource source = SpectrumSource::exact;
};

/**
 * @brief Boltzmann weight of the levels at or above E0 + f (E_max - E0).
 *
 * Exact spectra count every level once; DOS spectra weight each bin by its
 * normalised density. Weights use e^{-(E - E0)/T} so the largest is 1.
 */
TailRiskCurve boltzmann_tail(const Spectrum& spectrum, double cutoff_fraction,
                             std::span<const double> temperatures, double mean_coupling = 0.55);

/// Temperature grid: linear or log spaced, endpoints included.
std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points, bool log_spaced);

/// sigma = sqrt(2 J T).
double vix_map(double temperature, double mean_coupling);
/// T = sigma^2 / (2 J).
double temperature_of(double sigma, double mean_coupling);

struct CascadeTrace {
  std::vector<double> snapshot_times;              // j T / 7, j = 0..7
  std::vector<std::vector<double>> per_node_stress;
  std::vector<std::vector<double>> tier_means;     // NaN for a tier with no nodes
  double final_mean_stress = 0.0;
  std::size_t substeps = 0;                        // Trotter steps per interval
};

inline constexpr std::size_t kCascadeSnapshots = 8;

/**
 * @brief Shock propagation from the all-stable state |0...0>.
 *
 * Runs ceil((steps - 1) / 7) Trotter steps between consecutive snapshots,
 * so the default 32 steps give 35 steps of dt = T / 35.
 */
CascadeTrace cascade_simulate(const SupplyNetwork& net, double t_casc = 5.0, std::size_t steps = 32);

struct TrotterErrorReport {
  double dt = 0.0;
  double commutator_bound = 0.0;
  double per_step = 0.0;
  double total = 0.0;
};

/// per_step = dt^2 / 2 * sum_{j<k} ||[H_j, H_k]|| bound; total = per_step * steps.
TrotterErrorReport trotter_error_report(std::span<const PauliSum> parts, const TrotterConfig& config);

}  // namespace qrs
