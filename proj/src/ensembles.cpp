// Copyright 2026 The qpsq-lab Authors
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

#include "qpsq/ensembles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpsq {

namespace {

struct SymVec {
  std::uint64_t x = 0, z = 0;
  bool zero() const { return (x | z) == 0; }
};

int symplectic(const SymVec& a, const SymVec& b) {
  return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

SymVec random_vec(int n, Rng& rng) {
  const std::uint64_t mask = n >= 64 ? ~0ULL : ((1ULL << n) - 1ULL);
  SymVec v;
  v.x = rng() & mask;
  v.z = rng() & mask;
  return v;
}

// Projects u onto the symplectic complement of the chosen hyperbolic pairs.
SymVec project(SymVec u, const std::vector<std::pair<SymVec, SymVec>>& pairs) {
  for (const auto& [v, w] : pairs) {
    const int cw = symplectic(u, w), cv = symplectic(u, v);
    if (cw) { u.x ^= v.x; u.z ^= v.z; }
    if (cv) { u.x ^= w.x; u.z ^= w.z; }
  }
  return u;
}

}  // namespace

std::string_view to_string(EnsembleKind k) {
  return k == EnsembleKind::Haar ? "haar" : "clifford";
}

EnsembleKind parse_ensemble(std::string_view name) {
  if (name == "haar") return EnsembleKind::Haar;
  if (name == "clifford" || name == "uniform-clifford") return EnsembleKind::UniformClifford;
  throw std::invalid_argument("unknown ensemble \"" + std::string(name) + "\"");
}

Matrix haar_unitary(int n, Rng& rng) {
  require_dense(n);
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& packed = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const cplx d = packed(i, i);
    const double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : cplx(1.0);
  }
  return q;
}

CliffordTableau sample_clifford_tableau(int n, Rng& rng) {
  require_dense(n);
  std::vector<std::pair<SymVec, SymVec>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SymVec v;
    do {
      v = project(random_vec(n, rng), pairs);
    } while (v.zero());
    SymVec w;
    do {
      w = project(random_vec(n, rng), pairs);
    } while (symplectic(v, w) != 1);
    pairs.emplace_back(v, w);
  }
  CliffordTableau t;
  for (const auto& [v, w] : pairs) {
    t.x_images.push_back({PauliString(n, v.x, v.z), static_cast<bool>(rng() & 1ULL)});
    t.z_images.push_back({PauliString(n, w.x, w.z), static_cast<bool>(rng() & 1ULL)});
  }
  return t;
}

Vector apply_pauli(const SignedPauli& p, const Vector& psi) {
  const int n = p.pauli.num_qubits();
  const std::uint64_t dim = 1ULL << n;
  if (static_cast<std::uint64_t>(psi.size()) != dim) {
    throw std::invalid_argument("state/Pauli dimension mismatch");
  }
  const std::uint64_t xb = qubit_mask_to_basis(p.pauli.x_bits(), n);
  const std::uint64_t zb = qubit_mask_to_basis(p.pauli.z_bits(), n);
  static const cplx kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx phase = kIPow[std::popcount(p.pauli.x_bits() & p.pauli.z_bits()) % 4];
  if (p.negative) phase = -phase;
  Vector out(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zb) % 2) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(b ^ xb)) = sign * phase * psi(static_cast<Eigen::Index>(b));
  }
  return out;
}

Matrix CliffordTableau::to_unitary(int dense_cap) const {
  const int n = num_qubits();
  require_dense(n, dense_cap);
  const auto dim = static_cast<Eigen::Index>(1ULL << n);

  // U|0..0> is the joint +1 eigenvector of the Z images. Project basis
  // vectors onto it until one has non-zero overlap; stabilizer states have
  // |amplitude|^2 in {0} U [2^-n, 1].
  Vector psi0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    Vector v = Vector::Zero(dim);
    v(b) = 1.0;
    for (const auto& z : z_images) v = 0.5 * (v + apply_pauli(z, v));
    if (v.squaredNorm() > 0.5 / static_cast<double>(dim)) {
      psi0 = v / v.norm();
      break;
    }
  }
  if (psi0.size() == 0) throw std::logic_error("tableau has no stabilizer state");

  // U|c> = prod_q (U X_q U^dagger)^{c_q} U|0>
  Matrix u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vector col = psi0;
    for (int q = 0; q < n; ++q) {
      if ((static_cast<std::uint64_t>(c) >> (n - 1 - q)) & 1ULL) {
        col = apply_pauli(x_images[q], col);
      }
    }
    u.col(c) = col;
  }
  return u;
}

Matrix uniform_clifford(int n, Rng& rng) {
  return sample_clifford_tableau(n, rng).to_unitary();
}

Matrix sample_unitary(EnsembleKind kind, int n, Rng& rng) {
  return kind == EnsembleKind::Haar ? haar_unitary(n, rng) : uniform_clifford(n, rng);
}

double unitarity_residual(const Matrix& u) {
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

}  // namespace qpsq
