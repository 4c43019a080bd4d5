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

#include "qrs/dos.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qrs {

double TrotterConfig::dt() const {
  validate();
  return t_max / static_cast<double>(steps - 1);
}

void TrotterConfig::validate() const {
  if (steps < 2) throw std::invalid_argument("Trotter series needs at least 2 steps");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (padding_factor < 1) throw std::invalid_argument("padding factor must be at least 1");
}

std::vector<PauliSum> split_commuting(const PauliSum& h) {
  const std::size_t n = h.num_qubits();
  std::vector<PauliTerm> local, coupling;
  std::vector<std::vector<PauliTerm>> rest;
  for (const auto& t : h.terms()) {
    if (t.is_diagonal() && t.factors().size() <= 1) {
      local.push_back(t);
    } else if (t.is_diagonal()) {
      coupling.push_back(t);
    } else {
      bool placed = false;
      for (auto& g : rest) {
        if (std::all_of(g.begin(), g.end(), [&](const PauliTerm& u) { return commutes(t, u); })) {
          g.push_back(t);
          placed = true;
          break;
        }
      }
      if (!placed) rest.push_back({t});
    }
  }
  std::vector<PauliSum> parts;
  parts.emplace_back(n, std::move(local));
  parts.emplace_back(n, std::move(coupling));
  for (auto& g : rest) parts.emplace_back(n, std::move(g));
  if (rest.empty()) parts.emplace_back(n);
  return parts;
}

void trotter_step(Statevector& psi, std::span<const PauliSum> parts, double dt) {
  for (const auto& part : parts) {
    if (part.num_qubits() != psi.num_qubits()) {
      throw std::invalid_argument("Trotter part bound to a different qubit count than the state");
    }
    for (const auto& t : part.terms()) {
      const Complex c = t.coefficient();
      if (std::abs(c.imag()) > kCoefficientTolerance) {
        throw std::invalid_argument("Trotter evolution needs real coefficients");
      }
      psi.apply_pauli_exponential(t.with_coefficient(1.0), c.real() * dt);
    }
  }
}

Window parse_window(std::string_view name) {
  if (name == "hann") return Window::hann;
  if (name == "none") return Window::none;
  throw std::invalid_argument("unknown window '" + std::string(name) + "' (expected hann or none)");
}

std::string_view to_string(Window w) { return w == Window::hann ? "hann" : "none"; }

DosResult survival_series(const Statevector& psi0, const PauliSum& h, const TrotterConfig& config) {
  config.validate();
  if (h.num_qubits() != psi0.num_qubits()) {
    throw std::invalid_argument("Hamiltonian and state qubit counts differ");
  }
  DosResult r;
  r.dt = config.dt();
  r.energy_shift = config.energy_shift;
  r.padding_factor = config.padding_factor;
  r.nyquist = 1.0 / (2.0 * r.dt);
  const auto parts = split_commuting(h);
  // exp(+i shift dt) per step removes the reference energy.
  const Complex shift_phase = std::polar(1.0, config.energy_shift * r.dt);

  Statevector psi = psi0;
  for (std::size_t j = 0; j < config.steps; ++j) {
    if (j > 0) {
      trotter_step(psi, parts, r.dt);
      psi.apply_global_phase(shift_phase);
    }
    r.times.push_back(static_cast<double>(j) * r.dt);
    r.amplitudes.push_back(inner_product(psi0, psi));
  }
  return r;
}

namespace {

std::mutex g_fftw_plan_mutex;  // planner calls are not thread safe

}  // namespace

DosResult dos_reconstruct(DosResult series, Window window) {
  const std::size_t n = series.amplitudes.size();
  if (n == 0) throw std::invalid_argument("empty survival series");
  if (!(series.dt > 0.0)) throw std::invalid_argument("series time step must be positive");
  if (series.padding_factor < 1) throw std::invalid_argument("padding factor must be at least 1");
  const std::size_t m = n * series.padding_factor;
  series.window = window;

  fftw_complex* in = fftw_alloc_complex(m);
  fftw_complex* out = fftw_alloc_complex(m);
  if (!in || !out) {
    fftw_free(in);
    fftw_free(out);
    throw std::bad_alloc();
  }
  fftw_plan plan;
  {
    std::lock_guard lock(g_fftw_plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Complex v{0.0, 0.0};
    if (j < n) {
      double w = 1.0;
      if (window == Window::hann && n > 1) {
        w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(n - 1)));
      }
      v = series.amplitudes[j] * w;
    }
    in[j][0] = v.real();
    in[j][1] = v.imag();
  }
  fftw_execute(plan);

  // Reorder to ascending frequency: bins above m/2 are negative.
  const std::size_t half = m / 2;
  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(m) * series.dt);
  series.energy_grid.clear();
  series.density.clear();
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t k = (s + half + 1) % m;
    const double freq = k > half ? (static_cast<double>(k) - static_cast<double>(m)) * bin
                                 : static_cast<double>(k) * bin;
    series.energy_grid.push_back(series.energy_shift + freq);
    series.density.push_back(std::hypot(out[k][0], out[k][1]));
  }
  {
    std::lock_guard lock(g_fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);

  series.nyquist = 1.0 / (2.0 * series.dt);
  const double peak = *std::max_element(series.density.begin(), series.density.end());
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t s = 0; s < m; ++s) {
    if (peak > 0.0 && series.density[s] >= kDosSupportThreshold * peak) {
      if (!any) lo = series.energy_grid[s];
      hi = series.energy_grid[s];
      any = true;
    }
  }
  series.spectral_width_estimate = any ? (hi - lo) / (2.0 * std::numbers::pi) : 0.0;
  return series;
}

Spectrum spectrum_from_dos(const DosResult& dos, double threshold) {
  if (dos.density.empty()) throw std::invalid_argument("DOS has not been reconstructed");
  const double peak = *std::max_element(dos.density.begin(), dos.density.end());
  if (!(peak > 0.0)) throw std::domain_error("reconstructed density is identically zero");
  Spectrum s;
  s.source = SpectrumSource::dos;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t k = 0; k < dos.density.size(); ++k) {
    if (dos.density[k] >= threshold * peak) {
      s.energies.push_back(dos.energy_grid[k]);
      w.push_back(dos.density[k]);
      total += dos.density[k];
    }
  }
  for (auto& x : w) x /= total;
  s.weights = std::move(w);
  return s;
}

NyquistCheck nyquist_check(const TrotterConfig& config, double spectral_width) {
  if (spectral_width < 0.0) throw std::invalid_argument("spectral width must be nonnegative");
  NyquistCheck c;
  c.nyquist = 1.0 / (2.0 * config.dt());
  c.spectral_width = spectral_width;
  c.pass = c.nyquist > spectral_width;
  return c;
}

TailRiskCurve boltzmann_tail(const Spectrum& spectrum, double cutoff_fraction,
                             std::span<const double> temperatures, double mean_coupling) {
  if (spectrum.energies.empty()) throw std::invalid_argument("empty spectrum");
  if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0)) {
    throw std::invalid_argument("cutoff fraction must lie in (0, 1)");
  }
  const bool weighted = spectrum.source == SpectrumSource::dos;
  if (weighted && (!spectrum.weights || spectrum.weights->size() != spectrum.energies.size())) {
    throw std::invalid_argument("DOS spectrum needs one weight per energy");
  }
  TailRiskCurve c;
  c.source = spectrum.source;
  c.cutoff_fraction = cutoff_fraction;
  c.mean_coupling = mean_coupling;
  c.e_ground = *std::min_element(spectrum.energies.begin(), spectrum.energies.end());
  c.e_max = *std::max_element(spectrum.energies.begin(), spectrum.energies.end());
  c.e_cutoff = c.e_ground + cutoff_fraction * (c.e_max - c.e_ground);

  auto weight = [&](std::size_t k) { return weighted ? (*spectrum.weights)[k] : 1.0; };
  double above = 0.0, all = 0.0;
  for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
    all += weight(k);
    if (spectrum.energies[k] >= c.e_cutoff) above += weight(k);
  }
  c.count_fraction = above / all;

  for (double t : temperatures) {
    if (!(t > 0.0)) throw std::invalid_argument("temperatures must be positive");
    double z = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
      const double b = weight(k) * std::exp(-(spectrum.energies[k] - c.e_ground) / t);
      z += b;
      if (spectrum.energies[k] >= c.e_cutoff) tail += b;
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
      norm += weight(k) * std::exp(-(spectrum.energies[k] - c.e_ground) / t) / z;
    }
    c.temperatures.push_back(t);
    c.p_cat.push_back(std::clamp(tail / z, 0.0, 1.0));
    c.normalization.push_back(norm);
    c.vix_equivalents.push_back(vix_map(t, mean_coupling));
  }
  return c;
}

std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points, bool log_spaced) {
  if (!(t_min > 0.0) || !(t_max >= t_min)) throw std::invalid_argument("need 0 < t_min <= t_max");
  if (points < 1) throw std::invalid_argument("temperature grid needs at least one point");
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = t_min;
    return g;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(points - 1);
    g[i] = log_spaced ? std::exp(std::log(t_min) + u * (std::log(t_max) - std::log(t_min)))
                      : t_min + u * (t_max - t_min);
  }
  g.front() = t_min;
  g.back() = t_max;
  return g;
}

double vix_map(double temperature, double mean_coupling) {
  if (temperature < 0.0) throw std::invalid_argument("temperature must be nonnegative");
  if (!(mean_coupling > 0.0)) throw std::invalid_argument("mean coupling must be positive");
  return std::sqrt(2.0 * mean_coupling * temperature);
}

double temperature_of(double sigma, double mean_coupling) {
  if (sigma < 0.0) throw std::invalid_argument("implied volatility must be nonnegative");
  if (!(mean_coupling > 0.0)) throw std::invalid_argument("mean coupling must be positive");
  return sigma * sigma / (2.0 * mean_coupling);
}

CascadeTrace cascade_simulate(const SupplyNetwork& net, double t_casc, std::size_t steps) {
  if (!(t_casc > 0.0)) throw std::invalid_argument("cascade horizon must be positive");
  if (steps < 2) throw std::invalid_argument("cascade needs at least 2 steps");
  const std::size_t n = net.size();
  const auto h = build_hamiltonian(net);
  const auto parts = split_commuting(h);
  constexpr std::size_t intervals = kCascadeSnapshots - 1;

  CascadeTrace c;
  c.substeps = (steps - 1 + intervals - 1) / intervals;
  const double interval = t_casc / static_cast<double>(intervals);
  const double dt = interval / static_cast<double>(c.substeps);

  Statevector psi = Statevector::basis(n, 0);
  for (std::size_t j = 0; j < kCascadeSnapshots; ++j) {
    if (j > 0) {
      for (std::size_t s = 0; s < c.substeps; ++s) trotter_step(psi, parts, dt);
    }
    c.snapshot_times.push_back(static_cast<double>(j) * interval);
    std::vector<double> stress(n);
    for (std::size_t q = 0; q < n; ++q) stress[q] = std::clamp(stress_probability(psi, q), 0.0, 1.0);

    std::vector<double> sums(kTierCount, 0.0);
    std::vector<std::size_t> counts(kTierCount, 0);
    for (const auto& node : net.nodes) {
      if (node.tier < 0 || node.tier >= static_cast<int>(kTierCount)) continue;
      sums[node.tier] += stress[node.index];
      ++counts[node.tier];
    }
    std::vector<double> means(kTierCount);
    for (std::size_t t = 0; t < kTierCount; ++t) {
      means[t] = counts[t] ? sums[t] / static_cast<double>(counts[t])
                           : std::numeric_limits<double>::quiet_NaN();
    }
    c.per_node_stress.push_back(std::move(stress));
    c.tier_means.push_back(std::move(means));
  }
  const auto& last = c.per_node_stress.back();
  double s = 0.0;
  for (double v : last) s += v;
  c.final_mean_stress = n ? s / static_cast<double>(n) : 0.0;
  return c;
}

TrotterErrorReport trotter_error_report(std::span<const PauliSum> parts, const TrotterConfig& config) {
  TrotterErrorReport r;
  r.dt = config.dt();
  r.commutator_bound = commutator_norm_bound(parts);
  r.per_step = 0.5 * r.dt * r.dt * r.commutator_bound;
  r.total = r.per_step * static_cast<double>(config.steps);
  return r;
}

}  // namespace qrs
