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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dense_oracle.hpp"
#include "qrs/statevector.hpp"

namespace {

using qrs::Pauli;
using qrs::PauliTerm;
using qrs::Statevector;

TEST(Statevector, BasisStateIsLittleEndian) {
  const auto s = Statevector::basis(3, 0b101);
  EXPECT_EQ(s[5], qrs::Complex(1.0));
  EXPECT_DOUBLE_EQ(qrs::stress_probability(s, 0), 1.0);
  EXPECT_DOUBLE_EQ(qrs::stress_probability(s, 1), 0.0);
  EXPECT_DOUBLE_EQ(qrs::stress_probability(s, 2), 1.0);
  EXPECT_THROW(Statevector::basis(3, 8), std::out_of_range);
  EXPECT_THROW(Statevector(2, std::vector<qrs::Complex>(3)), std::invalid_argument);
}

TEST(Statevector, ElementaryGates) {
  auto s = Statevector::basis(1);
  s.apply_ry(0, M_PI);
  EXPECT_NEAR(std::abs(s[1] - qrs::Complex(1.0)), 0.0, 1e-15);
  auto r = Statevector::basis(1);
  r.apply_ry(0, M_PI / 2);
  EXPECT_NEAR(r[0].real(), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(r[1].real(), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(qrs::stress_probability(r, 0), 0.5, 1e-15);

  std::mt19937_64 rng(9);
  const auto psi = oracle::random_state(3, rng);
  auto same = psi;
  same.apply_ry(1, 0.0);
  EXPECT_EQ(qrs::max_abs_difference(same, psi), 0.0);

  auto c = Statevector::basis(2, 0b10);
  c.apply_cx(1, 0);
  EXPECT_EQ(c[3], qrs::Complex(1.0));
  auto z = Statevector::basis(2);
  z.apply_cx(1, 0);
  EXPECT_EQ(z[0], qrs::Complex(1.0));

  auto twice = oracle::random_state(4, rng);
  const auto orig = twice;
  twice.apply_cx(0, 3);
  twice.apply_cx(0, 3);
  EXPECT_LT(qrs::max_abs_difference(twice, orig), 1e-15);

  auto e = Statevector::basis(1);
  e.apply_pauli_exponential(PauliTerm::X(0), M_PI / 2);
  EXPECT_NEAR(std::abs(e[1] - qrs::Complex(0, -1)), 0.0, 1e-15);
  auto id = orig;
  id.apply_pauli_exponential(PauliTerm::ZZ(0, 1), 0.0);
  EXPECT_EQ(qrs::max_abs_difference(id, orig), 0.0);
}

TEST(Statevector, GatesMatchDenseMatrices) {
  std::mt19937_64 rng(21);
  const std::size_t n = 4;
  for (int trial = 0; trial < 8; ++trial) {
    const auto psi = oracle::random_state(n, rng);
    const auto v = oracle::vec(psi);
    for (std::size_t q = 0; q < n; ++q) {
      Statevector a = psi;
      a.apply_ry(q, 0.3 + q);
      EXPECT_LT(oracle::max_abs(oracle::vec(a) - oracle::embed(oracle::ry(0.3 + q), q, n) * v), 1e-13);
      Statevector b = psi;
      b.apply_x(q);
      EXPECT_LT(oracle::max_abs(oracle::vec(b) - oracle::embed(oracle::pauli_matrix(Pauli::X), q, n) * v), 1e-15);
      const std::size_t t = (q + 1 + trial % 3) % n;
      if (t == q) continue;
      Statevector c = psi;
      c.apply_cx(q, t);
      EXPECT_LT(oracle::max_abs(oracle::vec(c) - oracle::cx(q, t, n) * v), 1e-15);
    }
  }
}

TEST(Statevector, PauliExponentialMatchesDensePropagator) {
  std::mt19937_64 rng(8);
  const std::size_t n = 4;
  for (int trial = 0; trial < 25; ++trial) {
    auto t = oracle::random_term(n, rng, true).with_coefficient(trial % 2 ? 1.0 : -1.0);
    const auto psi = oracle::random_state(n, rng);
    Statevector out = psi;
    out.apply_pauli_exponential(t, 0.37);
    const oracle::Vec expect = oracle::propagator(oracle::dense(t, n), 0.37) * oracle::vec(psi);
    EXPECT_LT(oracle::max_abs(oracle::vec(out) - expect), 1e-12);
  }
  Statevector s = Statevector::basis(1);
  EXPECT_THROW(s.apply_pauli_exponential(PauliTerm::X(0, 0.5), 1.0), std::invalid_argument);
}

TEST(Statevector, NormAndInnerProducts) {
  std::mt19937_64 rng(2);
  const auto a = oracle::random_state(3, rng);
  const auto b = oracle::random_state(3, rng);
  EXPECT_NEAR(a.norm_squared(), 1.0, 1e-14);
  const qrs::Complex ref = oracle::vec(a).dot(oracle::vec(b));
  EXPECT_NEAR(std::abs(qrs::inner_product(a, b) - ref), 0.0, 1e-14);
  EXPECT_NEAR(qrs::distance(a, a), 0.0, 0.0);
  EXPECT_NEAR(qrs::distance(a, b), (oracle::vec(a) - oracle::vec(b)).norm(), 1e-14);
  Statevector z(1, {0.0, 0.0});
  EXPECT_THROW(z.normalize(), std::domain_error);
}

TEST(Statevector, RawDumpRoundTrips) {
  std::mt19937_64 rng(4);
  const auto a = oracle::random_state(5, rng);
  std::stringstream buf;
  qrs::write_raw(buf, a);
  const auto b = qrs::read_raw(buf);
  EXPECT_EQ(b.num_qubits(), 5u);
  EXPECT_EQ(qrs::max_abs_difference(a, b), 0.0);
  std::stringstream bad("abc");
  EXPECT_THROW(qrs::read_raw(bad), std::runtime_error);
}

TEST(MemoryGuard, RejectsOversizedRegisters) {
  EXPECT_EQ(qrs::statevector_bytes(1), 32u);
  EXPECT_EQ(qrs::statevector_bytes(20), 16777216u);
  const auto saved = qrs::memory_limit();
  qrs::set_memory_limit(1024);
  EXPECT_THROW(Statevector::basis(8), qrs::MemoryGuardError);
  try {
    qrs::check_memory(4096);
  } catch (const qrs::MemoryGuardError& e) {
    EXPECT_EQ(e.required_bytes(), 4096u);
    EXPECT_EQ(e.limit_bytes(), 1024u);
  }
  qrs::set_memory_limit(saved);
  EXPECT_NO_THROW(Statevector::basis(8));
}

}  // namespace
