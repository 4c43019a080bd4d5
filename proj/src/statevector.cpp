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

#include "qrs/statevector.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

namespace qrs {

namespace {

std::atomic<std::uint64_t> g_memory_limit{std::uint64_t{2} << 30};

std::string human_bytes(std::uint64_t b) {
  const char* units[] = {"B", "KB", "MB", "GB", "TB", "PB"};
  double v = static_cast<double>(b);
  int u = 0;
  while (v >= 1000.0 && u < 5) {
    v /= 1000.0;
    ++u;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f %s", v, units[u]);
  return buf;
}

}  // namespace

std::uint64_t statevector_bytes(std::size_t n) {
  if (n > 59) throw std::overflow_error("qubit count too large for a 64-bit byte count");
  return (std::uint64_t{1} << n) * 16;
}

std::uint64_t memory_limit() { return g_memory_limit.load(); }
void set_memory_limit(std::uint64_t bytes) { g_memory_limit.store(bytes); }

MemoryGuardError::MemoryGuardError(std::uint64_t required, std::uint64_t limit)
    : std::runtime_error("allocation of " + std::to_string(required) + " bytes (" +
                         human_bytes(required) + ") exceeds the memory limit of " +
                         std::to_string(limit) + " bytes"),
      required_(required),
      limit_(limit) {}

void check_memory(std::uint64_t bytes) {
  const auto limit = memory_limit();
  if (bytes > limit) throw MemoryGuardError(bytes, limit);
}

Statevector Statevector::basis(std::size_t n, std::uint64_t bits) {
  if (n < 1) throw std::invalid_argument("statevector needs at least one qubit");
  check_memory(statevector_bytes(n));
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (bits >= dim) throw std::out_of_range("basis index outside the 2^n range");
  Statevector s;
  s.num_qubits_ = n;
  s.amps_.assign(dim, Complex{0.0, 0.0});
  s.amps_[bits] = 1.0;
  return s;
}

Statevector::Statevector(std::size_t n, std::vector<Complex> amplitudes)
    : num_qubits_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > 59 || amps_.size() != (std::uint64_t{1} << n)) {
    throw std::invalid_argument("amplitude count does not match 2^n");
  }
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void Statevector::normalize() {
  const double nrm = std::sqrt(norm_squared());
  if (nrm == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

void Statevector::check_qubit(std::size_t q) const {
  if (q >= num_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " outside a " +
                            std::to_string(num_qubits_) + "-qubit register");
  }
}

void Statevector::apply_x(std::size_t q) {
  check_qubit(q);
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t j = 0; j < amps_.size(); ++j) {
    if (!(j & bit)) std::swap(amps_[j], amps_[j | bit]);
  }
}

void Statevector::apply_ry(std::size_t q, double theta) {
  check_qubit(q);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::uint64_t stride = std::uint64_t{1} << q;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t j = base; j < base + stride; ++j) {
      const Complex a0 = amps_[j];
      const Complex a1 = amps_[j + stride];
      amps_[j] = c * a0 - s * a1;
      amps_[j + stride] = s * a0 + c * a1;
    }
  }
}

void Statevector::apply_cx(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("CX control equals target");
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t j = 0; j < amps_.size(); ++j) {
    if ((j & cbit) && !(j & tbit)) std::swap(amps_[j], amps_[j | tbit]);
  }
}

void Statevector::apply_pauli_exponential(const PauliTerm& term, double angle) {
  const Complex c = term.coefficient();
  if (std::abs(c.imag()) > kCoefficientTolerance || std::abs(std::abs(c.real()) - 1.0) > 1e-12) {
    throw std::invalid_argument("Pauli exponential expects a unit real coefficient; fold "
                                "the weight into the angle");
  }
  if (term.support_end() > num_qubits_) throw std::out_of_range("Pauli string exceeds register");
  const double theta = c.real() > 0 ? angle : -angle;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const std::uint64_t flip = term.flip_mask();
  const std::uint64_t sign = term.sign_mask();
  // P|j> = phase(j) |j ^ flip> with phase(j) = i^{#Y} (-1)^{popcount(j & sign)}
  const std::size_t ny = term.y_count() % 4;
  const Complex ipow = ny == 0 ? Complex{1, 0} : ny == 1 ? Complex{0, 1} : ny == 2 ? Complex{-1, 0} : Complex{0, -1};
  auto phase = [&](std::uint64_t j) {
    return (std::popcount(j & sign) & 1) ? -ipow : ipow;
  };
  if (flip == 0) {
    const Complex plus{cs, -sn};   // eigenvalue +1
    const Complex minus{cs, sn};   // eigenvalue -1
    for (std::uint64_t j = 0; j < amps_.size(); ++j) {
      amps_[j] *= (std::popcount(j & sign) & 1) ? minus : plus;
    }
    return;
  }
  const Complex mis{0.0, -sn};
  for (std::uint64_t j = 0; j < amps_.size(); ++j) {
    const std::uint64_t k = j ^ flip;
    if (k < j) continue;
    const Complex aj = amps_[j];
    const Complex ak = amps_[k];
    // (P a)_j = phase(k) a_k, (P a)_k = phase(j) a_j
    amps_[j] = cs * aj + mis * phase(k) * ak;
    amps_[k] = cs * ak + mis * phase(j) * aj;
  }
}

void Statevector::apply_global_phase(Complex phase) {
  for (auto& a : amps_) a *= phase;
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  Complex s{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t j = 0; j < x.size(); ++j) s += std::conj(x[j]) * y[j];
  return s;
}

double stress_probability(const Statevector& psi, std::size_t q) {
  if (q >= psi.num_qubits()) throw std::out_of_range("qubit index outside the register");
  const std::uint64_t bit = std::uint64_t{1} << q;
  double p = 0.0;
  const auto a = psi.amplitudes();
  for (std::uint64_t j = 0; j < a.size(); ++j) {
    if (j & bit) p += std::norm(a[j]);
  }
  return p;
}

double max_abs_difference(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < a.dimension(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double distance(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.dimension(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated statevector dump");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= std::uint64_t{b[k]} << (8 * k);
  return v;
}

}  // namespace

void write_raw(std::ostream& out, const Statevector& psi) {
  put_u64(out, psi.num_qubits());
  for (const auto& a : psi.amplitudes()) {
    put_u64(out, std::bit_cast<std::uint64_t>(a.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(a.imag()));
  }
}

Statevector read_raw(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  if (n < 1 || n > 40) throw std::runtime_error("implausible qubit count in statevector dump");
  check_memory(statevector_bytes(n));
  std::vector<Complex> amps(std::uint64_t{1} << n);
  for (auto& a : amps) {
    const double re = std::bit_cast<double>(get_u64(in));
    const double im = std::bit_cast<double>(get_u64(in));
    a = {re, im};
  }
  return Statevector(n, std::move(amps));
}

}  // namespace qrs
