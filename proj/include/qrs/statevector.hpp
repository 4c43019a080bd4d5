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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "qrs/pauli.hpp"

namespace qrs {

/// Bytes needed for an n-qubit statevector: 2^n amplitudes of 16 bytes.
std::uint64_t statevector_bytes(std::size_t n);

/// Process-wide allocation ceiling for statevectors and dense work arrays.
/// Defaults to 2 GiB.
std::uint64_t memory_limit();
void set_memory_limit(std::uint64_t bytes);

class MemoryGuardError : public std::runtime_error {
 public:
  MemoryGuardError(std::uint64_t required, std::uint64_t limit);
  std::uint64_t required_bytes() const { return required_; }
  std::uint64_t limit_bytes() const { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

/// Throws MemoryGuardError when `bytes` exceeds the configured limit.
void check_memory(std::uint64_t bytes);

/**
 * @brief Dense 2^n complex amplitude vector.
 *
 * Little-endian basis convention: qubit 0 is the least significant bit of
 * the basis index, so |q_{n-1} ... q_1 q_0> has index sum_q q_q 2^q.
 * Gate kernels mutate the buffer in place.
 */
class Statevector {
 public:
  /// Empty register with no qubits; only useful as a placeholder.
  Statevector() = default;

  /// |bits> on n qubits.
  static Statevector basis(std::size_t n, std::uint64_t bits = 0);

  /// Takes ownership of 2^n amplitudes; does not normalize.
  Statevector(std::size_t n, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  void normalize();

  void apply_x(std::size_t q);
  /// [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on qubit q.
  void apply_ry(std::size_t q, double theta);
  void apply_cx(std::size_t control, std::size_t target);
  /// exp(-i * angle * P) for a Pauli string whose coefficient is +-1.
  void apply_pauli_exponential(const PauliTerm& term, double angle);
  /// Multiplies every amplitude by `phase`.
  void apply_global_phase(Complex phase);

 private:
  void check_qubit(std::size_t q) const;

  std::size_t num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// <a|b>.
Complex inner_product(const Statevector& a, const Statevector& b);

/// <(I - Z_q)/2>: probability that qubit q reads 1.
double stress_probability(const Statevector& psi, std::size_t q);

/// Max |a_i - b_i|.
double max_abs_difference(const Statevector& a, const Statevector& b);

/// Euclidean norm of a - b.
double distance(const Statevector& a, const Statevector& b);

// Raw dump: 8-byte little-endian qubit count, then (re, im) doubles.
void write_raw(std::ostream& out, const Statevector& psi);
Statevector read_raw(std::istream& in);

}  // namespace qrs
