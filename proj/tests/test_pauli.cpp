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

#include "dense_oracle.hpp"
#include "qrs/network.hpp"
#include "qrs/pauli.hpp"
#include "qrs/statevector.hpp"

namespace {

using qrs::Complex;
using qrs::Pauli;
using qrs::PauliSum;
using qrs::PauliTerm;

TEST(PauliTerm, SingleSiteProductsFollowTheAlgebra) {
  const Complex i(0, 1);
  EXPECT_EQ((PauliTerm::X(0) * PauliTerm::Y(0)).coefficient(), i);
  EXPECT_EQ((PauliTerm::Y(0) * PauliTerm::X(0)).coefficient(), -i);
  EXPECT_EQ((PauliTerm::Y(0) * PauliTerm::Z(0)).coefficient(), i);
  EXPECT_EQ((PauliTerm::Z(0) * PauliTerm::X(0)).coefficient(), i);
  const auto xx = PauliTerm::X(3) * PauliTerm::X(3);
  EXPECT_TRUE(xx.is_identity());
  EXPECT_EQ(xx.coefficient(), Complex(1.0));
}

TEST(PauliTerm, MultiSiteProduct) {
  const PauliTerm a(2.0, {{0, Pauli::X}, {1, Pauli::Z}});
  const auto p = a * PauliTerm::Y(0, 3.0);
  EXPECT_EQ(p.coefficient(), Complex(0, 6));
  EXPECT_TRUE(p.same_string(PauliTerm::ZZ(0, 1)));
  EXPECT_LT(oracle::max_abs(oracle::dense(p, 2) - oracle::dense(a, 2) * oracle::dense(PauliTerm::Y(0, 3.0), 2)),
            1e-15);
}

TEST(PauliSum, ElementaryCommutators) {
  EXPECT_TRUE(qrs::commutator(PauliSum(2, {PauliTerm::Z(0)}), PauliSum(2, {PauliTerm::Z(1)})).empty());
  const auto c = qrs::commutator(PauliSum(1, {PauliTerm::Z(0)}), PauliSum(1, {PauliTerm::X(0)}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.terms()[0].coefficient(), Complex(0, 2));
  EXPECT_TRUE(c.terms()[0].same_string(PauliTerm::Y(0)));
}

TEST(PauliSum, ElementaryExpectations) {
  EXPECT_EQ(qrs::expectation(PauliSum(1, {PauliTerm::Z(0)}), qrs::Statevector::basis(1)), 1.0);
  const auto flipped = qrs::apply_to_state(PauliSum(1, {PauliTerm::X(0)}), qrs::Statevector::basis(1));
  EXPECT_EQ(flipped[1], Complex(1.0));
  const auto plus = oracle::state(oracle::Vec::Constant(2, 1.0 / std::sqrt(2.0)), 1);
  EXPECT_NEAR(qrs::expectation(PauliSum(1, {PauliTerm::X(0)}), plus), 1.0, 1e-15);
}

TEST(PauliSum, CommutatorBoundDominatesDenseNorms) {
  const auto net = qrs::subnetwork(qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::B), 6);
  // Scenario B shocks start at qubit 20; give the sub-network its own shocks.
  auto shocked = net;
  shocked.shocks = {{0, 1.5}, {3, 0.4}, {5, 0.4}};
  const auto parts = qrs::hamiltonian_parts(shocked);
  double dense_sum = 0.0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (std::size_t k = j + 1; k < parts.size(); ++k) {
      const auto a = oracle::dense(parts[j], 6), b = oracle::dense(parts[k], 6);
      Eigen::JacobiSVD<oracle::Mat> svd(a * b - b * a);
      dense_sum += svd.singularValues()(0);
    }
  }
  EXPECT_GT(dense_sum, 0.0);
  EXPECT_GE(qrs::commutator_norm_bound(parts), dense_sum - 1e-12);
}

TEST(PauliTerm, FactorsAreSortedAndValidated) {
  const PauliTerm t(2.0, {{5, Pauli::Z}, {1, Pauli::X}});
  ASSERT_EQ(t.factors().size(), 2u);
  EXPECT_EQ(t.factors()[0].qubit, 1u);
  EXPECT_EQ(t.support_end(), 6u);
  EXPECT_EQ(t.flip_mask(), 0b10u);
  EXPECT_EQ(t.sign_mask(), 0b100000u);
  EXPECT_THROW(PauliTerm(1.0, {{2, Pauli::X}, {2, Pauli::Z}}), std::invalid_argument);
  EXPECT_THROW(PauliTerm(1.0, {{64, Pauli::X}}), std::out_of_range);
}

TEST(PauliTerm, CommutationCountsAnticommutingSites) {
  EXPECT_FALSE(qrs::commutes(PauliTerm::X(0), PauliTerm::Z(0)));
  EXPECT_TRUE(qrs::commutes(PauliTerm::X(0), PauliTerm::Z(1)));
  const PauliTerm xx(1.0, {{0, Pauli::X}, {1, Pauli::X}});
  EXPECT_TRUE(qrs::commutes(xx, PauliTerm::ZZ(0, 1)));
}

TEST(PauliSum, CanonicalFormMergesAndDrops) {
  const PauliSum s(3, {PauliTerm::Z(1, 0.5), PauliTerm::X(0, 1.0), PauliTerm::Z(1, -0.5),
                       PauliTerm::ZZ(0, 2, 2.0), PauliTerm(1e-14, {})});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.terms()[0].factors().size(), 1u);
  EXPECT_EQ(s.terms()[1].factors().size(), 2u);
  const PauliSum shuffled(3, {PauliTerm::ZZ(0, 2, 2.0), PauliTerm::X(0, 1.0)});
  EXPECT_EQ(s, shuffled);
}

TEST(PauliSum, RebindAndRestrict) {
  const PauliSum s(6, {PauliTerm::Z(1), PauliTerm::X(5), PauliTerm::ZZ(0, 4)});
  EXPECT_THROW(s.rebind(4), std::out_of_range);
  std::size_t dropped = 0;
  const PauliSum r = s.restrict_to(4, &dropped);
  EXPECT_EQ(dropped, 2u);
  EXPECT_EQ(r.num_qubits(), 4u);
  EXPECT_EQ(r.size(), 1u);
}

TEST(PauliSum, HermiticityFollowsCoefficients) {
  EXPECT_TRUE(PauliSum(2, {PauliTerm::Y(0, 0.3)}).is_hermitian());
  EXPECT_FALSE(PauliSum(2, {PauliTerm::Y(0, Complex(0, 0.3))}).is_hermitian());
  EXPECT_TRUE(PauliSum(2, {PauliTerm::ZZ(0, 1)}).is_diagonal());
}

TEST(PauliSum, ProductAndCommutatorMatchDenseMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto a = oracle::random_sum(n, 4, rng, trial % 2 == 0);
    const auto b = oracle::random_sum(n, 3, rng);
    const auto da = oracle::dense(a, n), db = oracle::dense(b, n);
    EXPECT_LT(oracle::max_abs(oracle::dense(a * b, n) - da * db), 1e-12);
    EXPECT_LT(oracle::max_abs(oracle::dense(qrs::commutator(a, b), n) - (da * db - db * da)), 1e-12);
    EXPECT_LT(oracle::max_abs(oracle::dense(a + b, n) - (da + db)), 1e-12);
    EXPECT_LT(oracle::max_abs(oracle::dense(a - b, n) - (da - db)), 1e-12);
  }
}

TEST(PauliSum, SubsidyCommutatorOnFiveQubitsMatchesDense) {
  const auto net = qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 5));
  const auto policies = qrs::canonical_policies(net);
  const PauliSum dh = policies[2].perturbation.restrict_to(5);
  const auto dense_h = oracle::dense(h, 5), dense_dh = oracle::dense(dh, 5);
  EXPECT_LT(oracle::max_abs(oracle::dense(qrs::commutator(h, dh), 5) - (dense_h * dense_dh - dense_dh * dense_h)),
            1e-12);
}

TEST(PauliSum, ApplyAndExpectationMatchDense) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto h = oracle::random_sum(n, 6, rng);
    const auto psi = oracle::random_state(n, rng);
    const auto d = oracle::dense(h, n);
    const auto v = oracle::vec(psi);
    EXPECT_LT(oracle::max_abs(oracle::vec(qrs::apply_to_state(h, psi)) - d * v), 1e-12);
    const Complex e = v.adjoint() * d * v;
    EXPECT_NEAR(qrs::expectation(h, psi), e.real(), 1e-12);
    const qrs::CompiledOperator op(h);
    EXPECT_NEAR(op.expectation(psi), e.real(), 1e-12);
    qrs::Statevector out = psi;
    op.apply(psi, out);
    EXPECT_LT(oracle::max_abs(oracle::vec(out) - d * v), 1e-12);
  }
}

TEST(PauliSum, ExpectationRejectsNonHermitianResidue) {
  const PauliSum a(1, {PauliTerm::X(0, Complex(0, 1))});
  const auto plus = oracle::state(oracle::Vec::Constant(2, 1.0 / std::sqrt(2.0)), 1);
  EXPECT_THROW(qrs::expectation(a, plus), std::domain_error);
  EXPECT_NEAR(qrs::expectation_complex(a, plus).imag(), 1.0, 1e-15);
}

TEST(PauliSum, CommutatorNormBoundCountsAnticommutingPairs) {
  const std::vector<PauliSum> parts{PauliSum(1, {PauliTerm::Z(0, 0.1)}), PauliSum(1, {PauliTerm::X(0, 1.5)})};
  EXPECT_NEAR(qrs::commutator_norm_bound(parts), 2 * 0.1 * 1.5, 1e-15);
  const std::vector<PauliSum> diag{PauliSum(2, {PauliTerm::Z(0)}), PauliSum(2, {PauliTerm::ZZ(0, 1)})};
  EXPECT_EQ(qrs::commutator_norm_bound(diag), 0.0);
}

TEST(PauliText, RoundTripsRealAndComplexCoefficients) {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_sum(6, 8, rng, false) + PauliSum(6, {PauliTerm(0.25, {})});
  const PauliSum back = qrs::parse_pauli_sum(qrs::to_text(s), 6);
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_TRUE(back.terms()[k].same_string(s.terms()[k]));
    EXPECT_NEAR(std::abs(back.terms()[k].coefficient() - s.terms()[k].coefficient()), 0.0, 1e-15);
  }
}

TEST(PauliText, RejectsMalformedLines) {
  EXPECT_THROW(qrs::parse_term("0.5 X0"), std::invalid_argument);
  EXPECT_THROW(qrs::parse_term("0.5 * Q0"), std::invalid_argument);
  EXPECT_THROW(qrs::parse_term("0.5 * I X0"), std::invalid_argument);
  EXPECT_THROW(qrs::parse_term("abc * X0"), std::invalid_argument);
}

}  // namespace
