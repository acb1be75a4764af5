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

#include "qpsq/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qpsq/ensembles.hpp"

namespace qpsq {

namespace {

int qubits_of_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

Eigen::Vector2cd single_qubit_vector(StabLabel l) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (l) {
    case StabLabel::Zero: return {1.0, 0.0};
    case StabLabel::One: return {0.0, 1.0};
    case StabLabel::Plus: return {r, r};
    case StabLabel::Minus: return {r, -r};
    case StabLabel::PlusY: return {cplx(r, 0), cplx(0, r)};
    case StabLabel::MinusY: return {cplx(r, 0), cplx(0, -r)};
  }
  return {1.0, 0.0};
}

}  // namespace

std::string_view label_text(StabLabel l) {
  switch (l) {
    case StabLabel::Zero: return "0";
    case StabLabel::One: return "1";
    case StabLabel::Plus: return "+";
    case StabLabel::Minus: return "-";
    case StabLabel::PlusY: return "+y";
    case StabLabel::MinusY: return "-y";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// StabilizerProductState

StabilizerProductState::StabilizerProductState(std::vector<StabLabel> labels)
    : labels_(std::move(labels)) {
  require_qubits(static_cast<int>(labels_.size()));
  for (std::size_t q = 0; q < labels_.size(); ++q) {
    const std::uint64_t bit = 1ULL << q;
    switch (labels_[q]) {
      case StabLabel::One: sign_ |= bit; [[fallthrough]];
      case StabLabel::Zero: bz_ |= bit; break;
      case StabLabel::Minus: sign_ |= bit; [[fallthrough]];
      case StabLabel::Plus: bx_ |= bit; break;
      case StabLabel::MinusY: sign_ |= bit; [[fallthrough]];
      case StabLabel::PlusY: bx_ |= bit; bz_ |= bit; break;
    }
  }
}

StabilizerProductState StabilizerProductState::parse(std::string_view text) {
  std::vector<StabLabel> labels;
  std::size_t i = 0;
  auto bad = [&] {
    return std::invalid_argument("invalid stabilizer label string \"" +
                                 std::string(text) + "\"");
  };
  while (i < text.size()) {
    bool minus = false;
    const char c = text[i];
    if (c == '0') { labels.push_back(StabLabel::Zero); ++i; continue; }
    if (c == '1') { labels.push_back(StabLabel::One); ++i; continue; }
    if (c == '+') {
      ++i;
    } else if (c == '-') {
      minus = true;
      ++i;
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212
      minus = true;
      i += 3;
    } else {
      throw bad();
    }
    if (i < text.size() && text[i] == 'y') {
      labels.push_back(minus ? StabLabel::MinusY : StabLabel::PlusY);
      ++i;
    } else {
      labels.push_back(minus ? StabLabel::Minus : StabLabel::Plus);
    }
  }
  if (labels.empty()) throw bad();
  return StabilizerProductState(std::move(labels));
}

StabilizerProductState StabilizerProductState::from_index(int n, std::uint64_t index) {
  require_qubits(n);
  if (n <= 24) {
    std::uint64_t total = 1;
    for (int q = 0; q < n; ++q) total *= 6;
    if (index >= total) throw std::out_of_range("stabilizer index beyond 6^n");
  }
  std::vector<StabLabel> labels(static_cast<std::size_t>(n));
  for (int q = n - 1; q >= 0; --q) {
    labels[q] = kAllStabLabels[index % 6];
    index /= 6;
  }
  return StabilizerProductState(std::move(labels));
}

std::string StabilizerProductState::to_string() const {
  std::string s;
  for (auto l : labels_) s += label_text(l);
  return s;
}

int stab_expectation(const PauliString& p, const StabilizerProductState& s) {
  if (p.num_qubits() != s.num_qubits()) {
    throw std::invalid_argument("Pauli/state qubit count mismatch");
  }
  const std::uint64_t supp = p.support();
  const std::uint64_t mismatch =
      ((p.x_bits() ^ s.basis_x()) | (p.z_bits() ^ s.basis_z())) & supp;
  if (mismatch != 0) return 0;
  return (std::popcount(s.sign_bits() & supp) % 2) ? -1 : 1;
}

Vector state_vector(const StabilizerProductState& s, int dense_cap) {
  require_dense(s.num_qubits(), dense_cap);
  Vector psi = Vector::Ones(1);
  for (auto l : s.labels()) {
    const Eigen::Vector2cd v = single_qubit_vector(l);
    Vector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * v(0);
      next(2 * i + 1) = psi(i) * v(1);
    }
    psi = std::move(next);
  }
  return psi;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix m, double tol)
    : m_(std::move(m)), n_(0) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix not square");
  n_ = qubits_of_dim(m_.rows());
  if (!satisfies_invariants(tol)) {
    throw std::invalid_argument("matrix is not a valid density matrix");
  }
}

DensityMatrix DensityMatrix::trusted(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix not square");
  const int n = qubits_of_dim(m.rows());
  return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const int n = qubits_of_dim(psi.size());
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("state vector not normalized");
  return DensityMatrix(psi * psi.adjoint(), n);
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  require_dense(n);
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), n);
}

DensityMatrix DensityMatrix::basis_state(int n, std::uint64_t index) {
  require_dense(n);
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  if (index >= static_cast<std::uint64_t>(dim)) throw std::out_of_range("basis index");
  Matrix m = Matrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m), n);
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool DensityMatrix::satisfies_invariants(double tol) const {
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol) {
    return false;
  }
  return min_eigenvalue() >= -std::max(1e-9, tol);
}

DensityMatrix density_of(const StabilizerProductState& s, int dense_cap) {
  return DensityMatrix::pure(state_vector(s, dense_cap));
}

// ---------------------------------------------------------------------------
// Distributions

std::string_view to_string(StateDistribution d) {
  switch (d) {
    case StateDistribution::ComputationalBasis: return "computational";
    case StateDistribution::StabilizerProduct: return "stabilizer";
    case StateDistribution::Haar: return "haar";
  }
  return "?";
}

StateDistribution parse_distribution(std::string_view name) {
  if (name == "computational" || name == "computational-basis" ||
      name == "computational-basis-uniform") {
    return StateDistribution::ComputationalBasis;
  }
  if (name == "stabilizer" || name == "stabilizer-product" ||
      name == "stabilizer-product-uniform") {
    return StateDistribution::StabilizerProduct;
  }
  if (name == "haar" || name == "haar-random") return StateDistribution::Haar;
  throw std::invalid_argument("unknown state distribution \"" + std::string(name) + "\"");
}

StabilizerProductState sample_stabilizer_product(int n, Rng& rng) {
  require_qubits(n);
  std::uniform_int_distribution<int> pick(0, 5);
  std::vector<StabLabel> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = kAllStabLabels[pick(rng)];
  return StabilizerProductState(std::move(labels));
}

DensityMatrix random_density_matrix(int n, Rng& rng) {
  require_dense(n);
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      g(r, c) = cplx(re, normal(rng));
    }
  }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

SampledState sample_state(StateDistribution d, int n, Rng& rng) {
  require_dense(n);
  switch (d) {
    case StateDistribution::ComputationalBasis: {
      std::bernoulli_distribution bit(0.5);
      std::vector<StabLabel> labels(static_cast<std::size_t>(n));
      for (auto& l : labels) l = bit(rng) ? StabLabel::One : StabLabel::Zero;
      StabilizerProductState s(std::move(labels));
      auto rho = density_of(s);
      return {s.to_string(), s, std::move(rho)};
    }
    case StateDistribution::StabilizerProduct: {
      auto s = sample_stabilizer_product(n, rng);
      auto rho = density_of(s);
      return {s.to_string(), s, std::move(rho)};
    }
    case StateDistribution::Haar: {
      const Matrix u = haar_unitary(n, rng);
      return {"haar", std::nullopt, DensityMatrix::pure(u.col(0))};
    }
  }
  throw std::invalid_argument("unknown distribution");
}

// ---------------------------------------------------------------------------
// Expectations

double pauli_expectation(const PauliString& p, const DensityMatrix& rho) {
  if (p.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("Pauli/state qubit count mismatch");
  }
  return trace_with_pauli(p, rho.matrix()).real();
}

double expectation(const Observable& o, const DensityMatrix& rho) {
  if (o.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("observable/state qubit count mismatch");
  }
  cplx acc = 0.0;
  for (const auto& t : o.terms()) acc += t.coeff * trace_with_pauli(t.pauli, rho.matrix());
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, o.pauli_1_norm())) {
    throw std::domain_error("expectation has a non-negligible imaginary part");
  }
  return acc.real();
}

double expectation(const Matrix& a, const DensityMatrix& rho) {
  if (a.rows() != rho.dim() || a.cols() != rho.dim()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  // tr(A rho) = sum_ij A_ij rho_ji
  return (a.cwiseProduct(rho.matrix().transpose())).sum().real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("state qubit count mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qpsq
