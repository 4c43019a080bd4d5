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

#include "qrs/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qrs/statevector.hpp"

namespace qrs {

namespace {

// i^k for k mod 4.
Complex i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Single-site product a*b = phase * c, with identity encoded as 0.
// Returns (c, power of i).
std::pair<std::uint8_t, int> site_product(std::uint8_t a, std::uint8_t b) {
  if (a == 0) return {b, 0};
  if (b == 0) return {a, 0};
  if (a == b) return {0, 0};
  // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
  const std::uint8_t c = static_cast<std::uint8_t>(6 - a - b);
  const bool cyclic = (a % 3) + 1 == b;
  return {c, cyclic ? 1 : 3};
}

inline double parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

// ---------------------------------------------------------------------------
// PauliTerm

PauliTerm::PauliTerm(Complex coefficient, std::vector<PauliFactor> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k].qubit >= kMaxQubits) {
      throw std::out_of_range("qubit index " + std::to_string(factors_[k].qubit) +
                              " exceeds the 64-qubit string limit");
    }
    const auto axis = static_cast<std::uint8_t>(factors_[k].axis);
    if (axis < 1 || axis > 3) throw std::invalid_argument("invalid Pauli axis");
    if (k > 0 && factors_[k].qubit == factors_[k - 1].qubit) {
      throw std::invalid_argument("repeated qubit index " +
                                  std::to_string(factors_[k].qubit) + " in Pauli term");
    }
  }
}

bool PauliTerm::is_diagonal() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PauliFactor& f) { return f.axis == Pauli::Z; });
}

std::uint32_t PauliTerm::support_end() const {
  return factors_.empty() ? 0 : factors_.back().qubit + 1;
}

std::uint64_t PauliTerm::flip_mask() const {
  std::uint64_t m = 0;
  for (const auto& f : factors_) {
    if (f.axis != Pauli::Z) m |= std::uint64_t{1} << f.qubit;
  }
  return m;
}

std::uint64_t PauliTerm::sign_mask() const {
  std::uint64_t m = 0;
  for (const auto& f : factors_) {
    if (f.axis != Pauli::X) m |= std::uint64_t{1} << f.qubit;
  }
  return m;
}

std::size_t PauliTerm::y_count() const {
  return static_cast<std::size_t>(std::count_if(
      factors_.begin(), factors_.end(), [](const PauliFactor& f) { return f.axis == Pauli::Y; }));
}

PauliTerm PauliTerm::with_coefficient(Complex c) const {
  PauliTerm t = *this;
  t.coefficient_ = c;
  return t;
}

bool PauliTerm::string_less(const PauliTerm& other) const {
  if (factors_.size() != other.factors_.size()) return factors_.size() < other.factors_.size();
  return factors_ < other.factors_;
}

PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  const auto fa = a.factors();
  const auto fb = b.factors();
  std::vector<PauliFactor> out;
  out.reserve(fa.size() + fb.size());
  int phase = 0;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].qubit < fb[j].qubit)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].qubit < fa[i].qubit) {
      out.push_back(fb[j++]);
    } else {
      const auto [c, p] = site_product(static_cast<std::uint8_t>(fa[i].axis),
                                       static_cast<std::uint8_t>(fb[j].axis));
      phase += p;
      if (c != 0) out.push_back({fa[i].qubit, static_cast<Pauli>(c)});
      ++i;
      ++j;
    }
  }
  return PauliTerm(a.coefficient() * b.coefficient() * i_power(static_cast<std::size_t>(phase)),
                   std::move(out));
}

bool commutes(const PauliTerm& a, const PauliTerm& b) {
  const auto fa = a.factors();
  const auto fb = b.factors();
  std::size_t anti = 0;
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].qubit < fb[j].qubit) {
      ++i;
    } else if (fb[j].qubit < fa[i].qubit) {
      ++j;
    } else {
      if (fa[i].axis != fb[j].axis) ++anti;
      ++i;
      ++j;
    }
  }
  return anti % 2 == 0;
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  for (const auto& t : terms) {
    if (t.support_end() > num_qubits_) {
      throw std::out_of_range("Pauli term touches qubit " + std::to_string(t.support_end() - 1) +
                              " but the operator is bound to " + std::to_string(num_qubits_) +
                              " qubits");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PauliTerm& a, const PauliTerm& b) { return a.string_less(b); });
  terms_.reserve(terms.size());
  for (std::size_t k = 0; k < terms.size();) {
    Complex c = terms[k].coefficient();
    std::size_t m = k + 1;
    while (m < terms.size() && terms[m].same_string(terms[k])) c += terms[m++].coefficient();
    if (std::abs(c) >= kCoefficientTolerance) terms_.push_back(terms[k].with_coefficient(c));
    k = m;
  }
}

bool PauliSum::is_hermitian() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) {
    return std::abs(t.coefficient().imag()) < kCoefficientTolerance;
  });
}

bool PauliSum::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.is_diagonal(); });
}

PauliSum PauliSum::rebind(std::size_t num_qubits) const {
  return PauliSum(num_qubits, terms_);
}

PauliSum PauliSum::restrict_to(std::size_t num_qubits, std::size_t* dropped) const {
  std::vector<PauliTerm> kept;
  for (const auto& t : terms_) {
    if (t.support_end() <= num_qubits) kept.push_back(t);
  }
  if (dropped) *dropped = terms_.size() - kept.size();
  return PauliSum(num_qubits, std::move(kept));
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits_ != b.num_qubits_) {
    throw std::invalid_argument("adding Pauli sums bound to different qubit counts");
  }
  std::vector<PauliTerm> all(a.terms_.begin(), a.terms_.end());
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return PauliSum(a.num_qubits_, std::move(all));
}

PauliSum operator*(Complex s, const PauliSum& a) {
  std::vector<PauliTerm> scaled;
  scaled.reserve(a.terms_.size());
  for (const auto& t : a.terms_) scaled.push_back(t.with_coefficient(s * t.coefficient()));
  return PauliSum(a.num_qubits_, std::move(scaled));
}

PauliSum operator-(const PauliSum& a, const PauliSum& b) { return a + Complex{-1.0} * b; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("multiplying Pauli sums bound to different qubit counts");
  }
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) out.push_back(ta * tb);
  }
  return PauliSum(a.num_qubits(), std::move(out));
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("commutator of Pauli sums bound to different qubit counts");
  }
  // Anticommuting strings give ab - ba = 2ab; commuting ones cancel exactly.
  std::vector<PauliTerm> out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (commutes(ta, tb)) continue;
      PauliTerm p = ta * tb;
      out.push_back(p.with_coefficient(2.0 * p.coefficient()));
    }
  }
  return PauliSum(a.num_qubits(), std::move(out));
}

double commutator_norm_bound(std::span<const PauliSum> parts) {
  for (const auto& p : parts) {
    if (p.num_qubits() != parts.front().num_qubits()) {
      throw std::invalid_argument("commutator bound over parts with different qubit counts");
    }
  }
  double bound = 0.0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (std::size_t k = j + 1; k < parts.size(); ++k) {
      for (const auto& a : parts[j].terms()) {
        for (const auto& b : parts[k].terms()) {
          if (!commutes(a, b)) bound += 2.0 * std::abs(a.coefficient()) * std::abs(b.coefficient());
        }
      }
    }
  }
  return bound;
}

// ---------------------------------------------------------------------------
// Matrix-free action

namespace {

void check_dims(const PauliSum& op, const Statevector& psi) {
  if (op.num_qubits() != psi.num_qubits()) {
    throw std::invalid_argument("operator is bound to " + std::to_string(op.num_qubits()) +
                                " qubits but the state has " + std::to_string(psi.num_qubits()));
  }
}

}  // namespace

Statevector apply_to_state(const PauliSum& op, const Statevector& psi) {
  check_dims(op, psi);
  std::vector<Complex> out(psi.dimension(), Complex{0.0, 0.0});
  const auto in = psi.amplitudes();
  for (const auto& t : op.terms()) {
    const std::uint64_t flip = t.flip_mask();
    const std::uint64_t sign = t.sign_mask();
    const Complex w = t.coefficient() * i_power(t.y_count());
    for (std::uint64_t j = 0; j < in.size(); ++j) {
      out[j ^ flip] += w * parity_sign(j & sign) * in[j];
    }
  }
  return Statevector(psi.num_qubits(), std::move(out));
}

Complex expectation_complex(const PauliSum& op, const Statevector& psi) {
  check_dims(op, psi);
  const auto a = psi.amplitudes();
  Complex total{0.0, 0.0};
  for (const auto& t : op.terms()) {
    const std::uint64_t flip = t.flip_mask();
    const std::uint64_t sign = t.sign_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t j = 0; j < a.size(); ++j) {
      acc += std::conj(a[j ^ flip]) * (parity_sign(j & sign) * a[j]);
    }
    total += t.coefficient() * i_power(t.y_count()) * acc;
  }
  return total;
}

double expectation(const PauliSum& op, const Statevector& psi) {
  const Complex v = expectation_complex(op, psi);
  if (std::abs(v.imag()) > kExpectationImagTolerance) {
    throw std::domain_error("expectation value has imaginary part " + std::to_string(v.imag()) +
                            "; operator is not Hermitian");
  }
  return v.real();
}

// ---------------------------------------------------------------------------
// CompiledOperator

CompiledOperator::CompiledOperator(const PauliSum& op) : num_qubits_(op.num_qubits()) {
  const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
  check_memory(dim * sizeof(double));
  diagonal_.assign(dim, 0.0);
  std::map<std::uint64_t, Group> by_flip;
  for (const auto& t : op.terms()) {
    const Complex w = t.coefficient() * i_power(t.y_count());
    if (t.flip_mask() == 0) {
      if (std::abs(w.imag()) > kCoefficientTolerance) {
        throw std::domain_error("compiled operator requires real diagonal coefficients");
      }
      const std::uint64_t sign = t.sign_mask();
      for (std::uint64_t j = 0; j < dim; ++j) diagonal_[j] += w.real() * parity_sign(j & sign);
    } else {
      auto& g = by_flip[t.flip_mask()];
      g.flip = t.flip_mask();
      g.sign_masks.push_back(t.sign_mask());
      g.weights.push_back(w);
    }
  }
  for (auto& [flip, g] : by_flip) groups_.push_back(std::move(g));
}

double CompiledOperator::expectation(const Statevector& psi) const {
  if (psi.num_qubits() != num_qubits_) {
    throw std::invalid_argument("compiled operator and state differ in qubit count");
  }
  const auto a = psi.amplitudes();
  double diag = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) diag += diagonal_[j] * std::norm(a[j]);
  Complex off{0.0, 0.0};
  for (const auto& g : groups_) {
    for (std::uint64_t j = 0; j < a.size(); ++j) {
      Complex w{0.0, 0.0};
      for (std::size_t k = 0; k < g.weights.size(); ++k) {
        w += g.weights[k] * parity_sign(j & g.sign_masks[k]);
      }
      off += std::conj(a[j ^ g.flip]) * w * a[j];
    }
  }
  return diag + off.real();
}

void CompiledOperator::apply(const Statevector& psi, Statevector& out) const {
  if (psi.num_qubits() != num_qubits_ || out.num_qubits() != num_qubits_) {
    throw std::invalid_argument("compiled operator and state differ in qubit count");
  }
  const auto a = psi.amplitudes();
  auto o = out.amplitudes();
  for (std::size_t j = 0; j < a.size(); ++j) o[j] = diagonal_[j] * a[j];
  for (const auto& g : groups_) {
    for (std::uint64_t j = 0; j < a.size(); ++j) {
      Complex w{0.0, 0.0};
      for (std::size_t k = 0; k < g.weights.size(); ++k) {
        w += g.weights[k] * parity_sign(j & g.sign_masks[k]);
      }
      o[j ^ g.flip] += w * a[j];
    }
  }
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Complex parse_coefficient(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    std::string_view body = s.substr(1, s.size() - 2);
    if (body.empty() || body.back() != 'i') {
      throw std::invalid_argument("complex coefficient must end in 'i': " + std::string(s));
    }
    body.remove_suffix(1);
    // split at the sign that starts the imaginary part (skip exponent signs)
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string_view::npos) {
      throw std::invalid_argument("malformed complex coefficient " + std::string(s));
    }
    return {parse_double(body.substr(0, split)), parse_double(body.substr(split))};
  }
  return {parse_double(s), 0.0};
}

}  // namespace

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return shortest(c.real());
  std::string im = shortest(c.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + shortest(c.real()) + im + "i)";
}

std::string to_text(const PauliTerm& term) {
  std::string s = format_coefficient(term.coefficient()) + " *";
  if (term.is_identity()) return s + " I";
  for (const auto& f : term.factors()) {
    s += ' ';
    s += to_char(f.axis);
    s += std::to_string(f.qubit);
  }
  return s;
}

std::string to_text(const PauliSum& sum) {
  std::string out;
  for (const auto& t : sum.terms()) out += to_text(t) + "\n";
  return out;
}

PauliTerm parse_term(std::string_view line) {
  line = trim(line);
  const auto star = line.find('*');
  if (star == std::string_view::npos) {
    throw std::invalid_argument("term line lacks '*': " + std::string(line));
  }
  const Complex c = parse_coefficient(line.substr(0, star));
  std::istringstream rest{std::string(line.substr(star + 1))};
  std::vector<PauliFactor> factors;
  std::string tok;
  bool saw_identity = false;
  while (rest >> tok) {
    if (tok == "I") {
      saw_identity = true;
      continue;
    }
    Pauli axis;
    switch (tok[0]) {
      case 'X': axis = Pauli::X; break;
      case 'Y': axis = Pauli::Y; break;
      case 'Z': axis = Pauli::Z; break;
      default: throw std::invalid_argument("unknown Pauli factor '" + tok + "'");
    }
    if (tok.size() < 2) throw std::invalid_argument("Pauli factor without index: " + tok);
    const double q = parse_double(std::string_view(tok).substr(1));
    if (q < 0 || q != std::floor(q)) throw std::invalid_argument("bad qubit index in " + tok);
    factors.push_back({static_cast<std::uint32_t>(q), axis});
  }
  if (factors.empty() && !saw_identity) {
    throw std::invalid_argument("term has no factors: " + std::string(line));
  }
  if (!factors.empty() && saw_identity) {
    throw std::invalid_argument("identity mixed with Pauli factors: " + std::string(line));
  }
  return PauliTerm(c, std::move(factors));
}

PauliSum parse_pauli_sum(std::string_view text, std::size_t num_qubits) {
  std::vector<PauliTerm> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') terms.push_back(parse_term(line));
    pos = nl + 1;
  }
  return PauliSum(num_qubits, std::move(terms));
}

}  // namespace qrs
