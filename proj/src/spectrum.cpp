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

#include "qrs/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qrs/splitmix64.hpp"

namespace qrs {

double Spectrum::gap() const {
  const double e0 = energies.front();
  for (double e : energies) {
    if (e > e0 + kDegeneracyTolerance) return e - e0;
  }
  return 0.0;
}

namespace {

// Splits the register into conserved (Z-only) qubits and free qubits.
struct SectorLayout {
  std::vector<std::uint32_t> free_qubits;
  std::vector<std::uint32_t> fixed_qubits;

  std::uint64_t block_dim() const { return std::uint64_t{1} << free_qubits.size(); }
  std::uint64_t sector_count() const { return std::uint64_t{1} << fixed_qubits.size(); }

  std::uint64_t index(std::uint64_t sector, std::uint64_t local) const {
    std::uint64_t j = 0;
    for (std::size_t k = 0; k < free_qubits.size(); ++k) {
      if (local >> k & 1) j |= std::uint64_t{1} << free_qubits[k];
    }
    for (std::size_t k = 0; k < fixed_qubits.size(); ++k) {
      if (sector >> k & 1) j |= std::uint64_t{1} << fixed_qubits[k];
    }
    return j;
  }

  std::uint64_t local(std::uint64_t j) const {
    std::uint64_t l = 0;
    for (std::size_t k = 0; k < free_qubits.size(); ++k) {
      if (j >> free_qubits[k] & 1) l |= std::uint64_t{1} << k;
    }
    return l;
  }
};

SectorLayout make_layout(const PauliSum& h, std::size_t n) {
  std::uint64_t flips = 0;
  for (const auto& t : h.terms()) flips |= t.flip_mask();
  SectorLayout layout;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (flips >> q & 1) {
      layout.free_qubits.push_back(q);
    } else {
      layout.fixed_qubits.push_back(q);
    }
  }
  return layout;
}

PauliSum bind(const PauliSum& h, std::size_t n) {
  if (n > kDenseQubitCap) {
    throw std::invalid_argument("dense diagonalization is capped at " +
                                std::to_string(kDenseQubitCap) + " qubits (requested " +
                                std::to_string(n) + ")");
  }
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  if (!h.is_hermitian()) throw std::invalid_argument("exact spectrum needs a Hermitian operator");
  return h.num_qubits() == n ? h : h.rebind(n);
}

Eigen::MatrixXcd block_matrix(const PauliSum& h, const SectorLayout& layout, std::uint64_t sector) {
  const auto dim = static_cast<Eigen::Index>(layout.block_dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint64_t j = layout.index(sector, static_cast<std::uint64_t>(col));
    for (const auto& t : h.terms()) {
      const std::uint64_t target = j ^ t.flip_mask();
      const std::size_t ny = t.y_count() % 4;
      Complex phase = ny == 0 ? Complex{1, 0} : ny == 1 ? Complex{0, 1} : ny == 2 ? Complex{-1, 0} : Complex{0, -1};
      if (std::popcount(j & t.sign_mask()) & 1) phase = -phase;
      m(static_cast<Eigen::Index>(layout.local(target)), col) += t.coefficient() * phase;
    }
  }
  return m;
}

struct BlockEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // empty unless requested
};

BlockEigen diagonalize(const Eigen::MatrixXcd& m, bool want_vectors) {
  BlockEigen out;
  const auto opts = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), opts);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    out.values = es.eigenvalues();
    if (want_vectors) out.vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, opts);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    out.values = es.eigenvalues();
    if (want_vectors) out.vectors = es.eigenvectors();
  }
  return out;
}

void check_block_memory(const SectorLayout& layout) {
  const std::uint64_t d = layout.block_dim();
  check_memory(d * d * sizeof(Complex) * 3);
}

std::size_t count_ground(const std::vector<double>& sorted) {
  std::size_t m = 0;
  for (double e : sorted) {
    if (e <= sorted.front() + kDegeneracyTolerance) ++m;
  }
  return m;
}

}  // namespace

Spectrum exact_spectrum(const PauliSum& h_in, std::size_t n, const Statevector* reference) {
  const PauliSum h = bind(h_in, n);
  if (reference && reference->num_qubits() != n) {
    throw std::invalid_argument("reference state qubit count differs from n");
  }
  const auto layout = make_layout(h, n);
  check_block_memory(layout);

  std::vector<double> energies;
  std::vector<double> weights;
  energies.reserve(std::uint64_t{1} << n);
  for (std::uint64_t s = 0; s < layout.sector_count(); ++s) {
    const auto eig = diagonalize(block_matrix(h, layout, s), reference != nullptr);
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      energies.push_back(eig.values[k]);
      if (reference) {
        Complex overlap{0.0, 0.0};
        for (Eigen::Index f = 0; f < eig.vectors.rows(); ++f) {
          overlap += std::conj(eig.vectors(f, k)) *
                     (*reference)[layout.index(s, static_cast<std::uint64_t>(f))];
        }
        weights.push_back(std::norm(overlap));
      }
    }
  }

  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  Spectrum out;
  out.energies.reserve(order.size());
  for (auto k : order) out.energies.push_back(energies[k]);
  if (reference) {
    std::vector<double> w;
    w.reserve(order.size());
    for (auto k : order) w.push_back(weights[k]);
    out.weights = std::move(w);
  }
  out.ground_multiplicity = count_ground(out.energies);
  return out;
}

GroundState exact_ground_state(const PauliSum& h_in, std::size_t n) {
  const PauliSum h = bind(h_in, n);
  const auto layout = make_layout(h, n);
  check_block_memory(layout);
  check_memory(statevector_bytes(n));

  std::vector<double> all;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_sector = 0;
  Eigen::VectorXcd best_vec;
  for (std::uint64_t s = 0; s < layout.sector_count(); ++s) {
    const auto eig = diagonalize(block_matrix(h, layout, s), true);
    all.insert(all.end(), eig.values.begin(), eig.values.end());
    if (eig.values[0] < best - kDegeneracyTolerance) {
      best = eig.values[0];
      best_sector = s;
      best_vec = eig.vectors.col(0);
    }
  }
  std::vector<Complex> amps(std::uint64_t{1} << n, Complex{0.0, 0.0});
  for (Eigen::Index f = 0; f < best_vec.size(); ++f) {
    amps[layout.index(best_sector, static_cast<std::uint64_t>(f))] = best_vec[f];
  }
  std::sort(all.begin(), all.end());
  GroundState g{all.front(), Statevector(n, std::move(amps)), count_ground(all)};
  g.state.normalize();
  return g;
}

IterativeGroundState ground_state_iterative(const PauliSum& h_in, std::size_t n,
                                            const IterativeOptions& options) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  if (!h_in.is_hermitian()) throw std::invalid_argument("iterative solver needs a Hermitian operator");
  const PauliSum h = h_in.num_qubits() == n ? h_in : h_in.rebind(n);
  const std::uint64_t vec_bytes = statevector_bytes(n);
  check_memory(vec_bytes);
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::size_t m = std::min<std::uint64_t>(options.krylov_dim, dim);
  const std::uint64_t budget = memory_limit() / vec_bytes;
  if (budget < 4) throw MemoryGuardError(4 * vec_bytes, memory_limit());
  m = std::min<std::uint64_t>(m, budget - 3);
  m = std::max<std::size_t>(m, 2);

  const CompiledOperator op(h);
  SplitMix64 rng(options.seed);
  std::vector<Complex> start(dim);
  for (auto& a : start) a = {rng.next_double() - 0.5, rng.next_double() - 0.5};
  Statevector x(n, std::move(start));
  x.normalize();

  IterativeGroundState result{0.0, x, 0.0, 0};
  Statevector w = Statevector::basis(n, 0);
  for (std::size_t cycle = 0; cycle < options.max_restarts; ++cycle) {
    std::vector<Statevector> basis;
    basis.reserve(m + 1);
    basis.push_back(x);
    std::vector<double> alpha, beta;
    for (std::size_t j = 0; j < m; ++j) {
      op.apply(basis[j], w);
      ++result.matvecs;
      alpha.push_back(inner_product(basis[j], w).real());
      // full reorthogonalization, applied twice
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) {
          const Complex c = inner_product(v, w);
          auto wa = w.amplitudes();
          const auto va = v.amplitudes();
          for (std::size_t k = 0; k < wa.size(); ++k) wa[k] -= c * va[k];
        }
      }
      const double b = std::sqrt(w.norm_squared());
      if (j + 1 == m || b < 1e-12) break;
      beta.push_back(b);
      auto wa = w.amplitudes();
      for (auto& a : wa) a /= b;
      basis.push_back(w);
    }
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto va = basis[static_cast<std::size_t>(i)].amplitudes();
      for (std::size_t q = 0; q < dim; ++q) amps[q] += y[i] * va[q];
    }
    x = Statevector(n, std::move(amps));
    x.normalize();
    op.apply(x, w);
    ++result.matvecs;
    const double energy = inner_product(x, w).real();
    double r2 = 0.0;
    for (std::size_t q = 0; q < dim; ++q) r2 += std::norm(w[q] - energy * x[q]);
    result.energy = energy;
    result.residual = std::sqrt(r2);
    if (result.residual < options.tolerance) {
      result.state = x;
      return result;
    }
  }
  throw std::runtime_error("iterative ground-state search did not converge: residual " +
                           std::to_string(result.residual) + " after " +
                           std::to_string(options.max_restarts) + " restarts");
}

}  // namespace qrs
