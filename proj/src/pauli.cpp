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

#include "qpsq/pauli.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace qpsq {

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~0ULL : ((1ULL << n) - 1ULL);
}

void enumerate_rec(int n, int remaining, int next_qubit, std::uint64_t x,
                   std::uint64_t z, std::vector<PauliString>& out) {
  if (remaining == 0) {
    out.emplace_back(n, x, z);
    return;
  }
  for (int q = next_qubit; q <= n - remaining; ++q) {
    const std::uint64_t bit = 1ULL << q;
    enumerate_rec(n, remaining - 1, q + 1, x | bit, z, out);        // X
    enumerate_rec(n, remaining - 1, q + 1, x | bit, z | bit, out);  // Y
    enumerate_rec(n, remaining - 1, q + 1, x, z | bit, out);        // Z
  }
}

// Symbol rank used by the canonical order: X < Y < Z.
int symbol_rank(Pauli p) {
  switch (p) {
    case Pauli::X: return 0;
    case Pauli::Y: return 1;
    case Pauli::Z: return 2;
    default: return -1;
  }
}

}  // namespace

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

void require_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " +
                                std::to_string(n));
  }
}

void require_dense(int n, int dense_cap) {
  require_qubits(n);
  if (n > dense_cap) {
    throw std::length_error("dense representation requested for " +
                            std::to_string(n) + " qubits (cap " +
                            std::to_string(dense_cap) + ")");
  }
}

PauliString::PauliString(int n) : n_(n) { require_qubits(n); }

PauliString::PauliString(int n, std::uint64_t x_bits, std::uint64_t z_bits)
    : n_(n), x_(x_bits), z_(z_bits) {
  require_qubits(n);
  if (((x_ | z_) & ~low_mask(n)) != 0) {
    throw std::invalid_argument("Pauli bits set beyond qubit count");
  }
}

PauliString PauliString::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  require_qubits(n);
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = 1ULL << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli symbol '" +
                                    std::string(1, text[q]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int qubit, Pauli p) {
  return PauliString(n).with(qubit, p);
}

Pauli PauliString::at(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit index");
  const bool xb = (x_ >> qubit) & 1ULL;
  const bool zb = (z_ >> qubit) & 1ULL;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

PauliString PauliString::with(int qubit, Pauli p) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit index");
  const std::uint64_t bit = 1ULL << qubit;
  std::uint64_t x = x_ & ~bit, z = z_ & ~bit;
  if (p == Pauli::X || p == Pauli::Y) x |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z |= bit;
  return PauliString(n_, x, z);
}

std::string PauliString::to_string() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = pauli_char(at(q));
  return s;
}

bool CanonicalLess::operator()(const PauliString& a,
                               const PauliString& b) const noexcept {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  std::uint64_t sa = a.support(), sb = b.support();
  while (sa != 0 && sb != 0) {
    const int qa = std::countr_zero(sa), qb = std::countr_zero(sb);
    if (qa != qb) return qa < qb;
    const int ra = symbol_rank(a.at(qa)), rb = symbol_rank(b.at(qb));
    if (ra != rb) return ra < rb;
    sa &= sa - 1;
    sb &= sb - 1;
  }
  return false;
}

std::uint64_t count_low_degree(int n, int k) {
  std::uint64_t total = 0, binom = 1, pow3 = 1;
  for (int j = 0; j <= k; ++j) {
    total += binom * pow3;
    binom = binom * static_cast<std::uint64_t>(n - j) / static_cast<std::uint64_t>(j + 1);
    pow3 *= 3;
  }
  return total;
}

std::vector<PauliString> enumerate_low_degree(int n, int k) {
  require_qubits(n);
  if (k < 0 || k > n) {
    throw std::invalid_argument("invalid degree cap " + std::to_string(k) +
                                " for " + std::to_string(n) + " qubits");
  }
  std::vector<PauliString> out;
  out.reserve(count_low_degree(n, k));
  for (int d = 0; d <= k; ++d) enumerate_rec(n, d, 0, 0, 0, out);
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  const auto s = (a.x_bits() & b.z_bits()) ^ (a.z_bits() & b.x_bits());
  return std::popcount(s) % 2 == 0;
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(int n, std::vector<PauliTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  require_qubits(n);
  std::unordered_set<PauliString, PauliHash> seen;
  for (const auto& t : terms_) {
    if (t.pauli.num_qubits() != n) {
      throw std::invalid_argument("observable term " + t.pauli.to_string() +
                                  " does not act on " + std::to_string(n) +
                                  " qubits");
    }
    if (!std::isfinite(t.coeff)) {
      throw std::invalid_argument("non-finite observable coefficient");
    }
    if (!seen.insert(t.pauli).second) {
      throw std::invalid_argument("duplicate Pauli string " +
                                  t.pauli.to_string() + " in observable");
    }
  }
}

Observable Observable::from_pauli(const PauliString& p, double coeff) {
  return Observable(p.num_qubits(), {PauliTerm{coeff, p}});
}

Observable Observable::parse_pauli(std::string_view text, double coeff) {
  return from_pauli(PauliString::parse(text), coeff);
}

double Observable::pauli_1_norm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

double Observable::identity_coefficient() const noexcept {
  for (const auto& t : terms_) {
    if (t.pauli.is_identity()) return t.coeff;
  }
  return 0.0;
}

int Observable::max_degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.pauli.degree());
  return d;
}

double Observable::operator_norm(int dense_cap) const {
  const Matrix m = to_matrix(*this, dense_cap);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::string Observable::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first && t.coeff >= 0) os << '+';
    os << t.coeff << '*' << t.pauli.to_string();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Observable Observable::scaled(double factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff *= factor;
  return Observable(n_, std::move(terms));
}

Observable operator+(const Observable& a, const Observable& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("observable size mismatch");
  auto terms = a.terms_;
  for (const auto& tb : b.terms_) {
    bool merged = false;
    for (auto& ta : terms) {
      if (ta.pauli == tb.pauli) {
        ta.coeff += tb.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) terms.push_back(tb);
  }
  return Observable(a.n_, std::move(terms));
}

bool validate_few_body(const Observable& o, int kappa, int incidence_cap) {
  std::vector<int> incidence(static_cast<std::size_t>(o.num_qubits()), 0);
  for (const auto& t : o.terms()) {
    if (t.pauli.degree() > kappa) return false;
    std::uint64_t s = t.pauli.support();
    while (s != 0) {
      const int q = std::countr_zero(s);
      if (++incidence[q] > incidence_cap) return false;
      s &= s - 1;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dense matrices

namespace {

void accumulate_pauli(Matrix& m, const PauliString& p, cplx weight) {
  const int n = p.num_qubits();
  const std::uint64_t dim = 1ULL << n;
  const std::uint64_t xb = qubit_mask_to_basis(p.x_bits(), n);
  const std::uint64_t zb = qubit_mask_to_basis(p.z_bits(), n);
  static const cplx kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = weight * kIPow[std::popcount(p.x_bits() & p.z_bits()) % 4];
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zb) % 2) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ xb), static_cast<Eigen::Index>(b)) += sign * base;
  }
}

}  // namespace

Matrix to_matrix(const PauliString& p, int dense_cap) {
  require_dense(p.num_qubits(), dense_cap);
  const auto dim = static_cast<Eigen::Index>(1ULL << p.num_qubits());
  Matrix m = Matrix::Zero(dim, dim);
  accumulate_pauli(m, p, 1.0);
  return m;
}

Matrix to_matrix(const Observable& o, int dense_cap) {
  require_dense(o.num_qubits(), dense_cap);
  const auto dim = static_cast<Eigen::Index>(1ULL << o.num_qubits());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : o.terms()) accumulate_pauli(m, t.pauli, t.coeff);
  return m;
}

cplx trace_with_pauli(const PauliString& p, const Matrix& rho) {
  const int n = p.num_qubits();
  const std::uint64_t dim = 1ULL << n;
  const std::uint64_t xb = qubit_mask_to_basis(p.x_bits(), n);
  const std::uint64_t zb = qubit_mask_to_basis(p.z_bits(), n);
  static const cplx kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx acc = 0.0;
  // tr(P rho) = sum_c <c^x| P |c> rho(c, c^x)
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double sign = (std::popcount(c & zb) % 2) ? -1.0 : 1.0;
    acc += sign * rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ xb));
  }
  return acc * kIPow[std::popcount(p.x_bits() & p.z_bits()) % 4];
}

}  // namespace qpsq
