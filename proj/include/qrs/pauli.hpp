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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrs {

using Complex = std::complex<double>;

class Statevector;

/// Coefficients with magnitude below this are dropped during canonicalization.
inline constexpr double kCoefficientTolerance = 1e-12;

/// Imaginary residue of an expectation value that is silently discarded.
inline constexpr double kExpectationImagTolerance = 1e-10;

/// Single-qubit Pauli axis. Identity is represented by absence.
enum class Pauli : std::uint8_t { X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

struct PauliFactor {
  std::uint32_t qubit = 0;
  Pauli axis = Pauli::Z;

  auto operator<=>(const PauliFactor&) const = default;
};

/**
 * @brief A weighted Pauli string c * P_{q0} P_{q1} ...
 *
 * Factors are kept sorted by qubit index with no repeated index. An empty
 * factor list is a scaled identity. Qubit indices are limited to 64 so that
 * every string has an (x, z) bitmask form for the statevector kernels.
 */
class PauliTerm {
 public:
  static constexpr std::uint32_t kMaxQubits = 64;

  PauliTerm() = default;
  explicit PauliTerm(Complex coefficient, std::vector<PauliFactor> factors = {});

  static PauliTerm X(std::uint32_t q, Complex c = 1.0) { return PauliTerm(c, {{q, Pauli::X}}); }
  static PauliTerm Y(std::uint32_t q, Complex c = 1.0) { return PauliTerm(c, {{q, Pauli::Y}}); }
  static PauliTerm Z(std::uint32_t q, Complex c = 1.0) { return PauliTerm(c, {{q, Pauli::Z}}); }
  static PauliTerm ZZ(std::uint32_t a, std::uint32_t b, Complex c = 1.0) {
    return PauliTerm(c, {{a, Pauli::Z}, {b, Pauli::Z}});
  }

  const Complex& coefficient() const { return coefficient_; }
  std::span<const PauliFactor> factors() const { return factors_; }

  bool is_identity() const { return factors_.empty(); }
  /// True when every factor is Z.
  bool is_diagonal() const;
  /// One past the largest qubit index touched; 0 for the identity.
  std::uint32_t support_end() const;

  /// Qubits carrying X or Y (amplitude index flips).
  std::uint64_t flip_mask() const;
  /// Qubits carrying Y or Z (sign depends on the input bit).
  std::uint64_t sign_mask() const;
  std::size_t y_count() const;

  PauliTerm with_coefficient(Complex c) const;
  bool same_string(const PauliTerm& other) const { return factors_ == other.factors_; }
  bool operator==(const PauliTerm&) const = default;

  /// Canonical ordering key: factor count, then lexicographic factor list.
  bool string_less(const PauliTerm& other) const;

 private:
  Complex coefficient_{1.0, 0.0};
  std::vector<PauliFactor> factors_;
};

/// Product of two terms with the Pauli phase folded into the coefficient.
PauliTerm operator*(const PauliTerm& a, const PauliTerm& b);

/// True when the two strings commute (even number of anticommuting sites).
bool commutes(const PauliTerm& a, const PauliTerm& b);

/**
 * @brief Weighted sum of Pauli strings on a fixed number of qubits.
 *
 * Always held in canonical form: terms sorted by (factor count,
 * lexicographic factor list), equal strings merged by coefficient addition
 * and terms with |c| < 1e-12 dropped. Values are immutable once built, so a
 * PauliSum may be shared across threads freely.
 */
class PauliSum {
 public:
  explicit PauliSum(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const { return num_qubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// All coefficients real within the canonical tolerance.
  bool is_hermitian() const;
  bool is_diagonal() const;

  /// Same operator bound to a different qubit count. Throws if a term
  /// touches a qubit >= num_qubits.
  PauliSum rebind(std::size_t num_qubits) const;

  /// Keeps only terms supported on qubits < num_qubits; the result is bound
  /// to num_qubits. `dropped`, when given, receives the count of removed terms.
  PauliSum restrict_to(std::size_t num_qubits, std::size_t* dropped = nullptr) const;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator-(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(Complex s, const PauliSum& a);

  bool operator==(const PauliSum& other) const = default;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum operator*(const PauliSum& a, const PauliSum& b);

/// ab - ba. Empty when every term pair commutes.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Matrix-free op|psi>. Each string visits every amplitude exactly once.
Statevector apply_to_state(const PauliSum& op, const Statevector& psi);

/// <psi|op|psi> without the Hermiticity check.
Complex expectation_complex(const PauliSum& op, const Statevector& psi);

/// <psi|op|psi> for a Hermitian operator. Throws std::domain_error when the
/// imaginary part exceeds 1e-10.
double expectation(const PauliSum& op, const Statevector& psi);

/// Upper bound on sum_{j<k} ||[H_j, H_k]|| from the coefficient triangle
/// inequality: each anticommuting pair of strings contributes 2|a||b|.
double commutator_norm_bound(std::span<const PauliSum> parts);

/**
 * @brief An operator preprocessed for repeated expectation values.
 *
 * The diagonal part is tabulated once as a dense vector of 2^n reals and
 * the remaining strings are grouped by flip mask, so one expectation value
 * costs one pass over the amplitudes per distinct flip mask.
 */
class CompiledOperator {
 public:
  explicit CompiledOperator(const PauliSum& op);

  std::size_t num_qubits() const { return num_qubits_; }
  double expectation(const Statevector& psi) const;
  void apply(const Statevector& psi, Statevector& out) const;

 private:
  struct Group {
    std::uint64_t flip = 0;
    std::vector<std::uint64_t> sign_masks;
    std::vector<Complex> weights;  // coefficient * i^{#Y}
  };
  std::size_t num_qubits_ = 0;
  std::vector<double> diagonal_;
  std::vector<Group> groups_;
};

// Text form: one term per line, `coeff * A{i} A{j} ...`, identity as `1.0 * I`.
// Complex coefficients are written as `(re+imi)`.
std::string format_coefficient(Complex c);
std::string to_text(const PauliTerm& term);
std::string to_text(const PauliSum& sum);
PauliTerm parse_term(std::string_view line);
PauliSum parse_pauli_sum(std::string_view text, std::size_t num_qubits);

}  // namespace qrs
