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

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qpsq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest qubit count for which dense 2^n x 2^n matrices are built.
inline constexpr int kDefaultDenseCap = 10;
/// Bit-packed strings hold at most this many qubits.
inline constexpr int kMaxQubits = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/**
 * An n-qubit Pauli operator without phase, stored as two bitmasks.
 *
 * Bit q of the x-mask / z-mask describes qubit q: (1,0) = X, (1,1) = Y,
 * (0,1) = Z. Qubit 0 is the leftmost character of the string form and the
 * leftmost Kronecker factor of the dense matrix (most significant bit of
 * the computational-basis index).
 */
class PauliString {
 public:
  /// Identity on n qubits.
  explicit PauliString(int n);
  PauliString(int n, std::uint64_t x_bits, std::uint64_t z_bits);

  /// Parses a string over {I,X,Y,Z}, e.g. "IZXI".
  static PauliString parse(std::string_view text);
  /// Single non-identity factor `p` on `qubit`.
  static PauliString single(int n, int qubit, Pauli p);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t x_bits() const noexcept { return x_; }
  std::uint64_t z_bits() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  int degree() const noexcept { return std::popcount(x_ | z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  Pauli at(int qubit) const;
  PauliString with(int qubit, Pauli p) const;

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Degree-major, then lexicographic over (qubit, symbol) with X < Y < Z.
struct CanonicalLess {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept;
};

struct PauliHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.x_bits() * 0x9e3779b97f4a7c15ULL ^
                                      p.z_bits());
  }
};

inline int degree(const PauliString& p) noexcept { return p.degree(); }

/// Number of n-qubit Pauli strings with degree <= k: sum_j C(n,j) 3^j.
std::uint64_t count_low_degree(int n, int k);

/// Every Pauli string with degree <= k in canonical order.
/// Throws std::invalid_argument when k > n or k < 0.
std::vector<PauliString> enumerate_low_degree(int n, int k);

/// Whether P and Q commute (symplectic product zero).
bool commutes(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coeff;
  PauliString pauli;
};

/// Real linear combination of distinct Pauli strings on a common register.
class Observable {
 public:
  Observable(int n, std::vector<PauliTerm> terms);

  static Observable from_pauli(const PauliString& p, double coeff = 1.0);
  /// Convenience: parse "ZIII" into a unit-weight observable.
  static Observable parse_pauli(std::string_view text, double coeff = 1.0);

  int num_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

  double pauli_1_norm() const noexcept;
  /// Coefficient of the identity string, i.e. tr(O) / 2^n.
  double identity_coefficient() const noexcept;
  int max_degree() const noexcept;

  /// Largest |eigenvalue| of the dense matrix. Desk scale only.
  double operator_norm(int dense_cap = kDefaultDenseCap) const;

  /// Stable textual id, e.g. "0.5*ZI+0.5*IZ".
  std::string to_string() const;

  Observable scaled(double factor) const;
  friend Observable operator+(const Observable& a, const Observable& b);

 private:
  int n_;
  std::vector<PauliTerm> terms_;
};

/**
 * Few-body check: every term has degree <= kappa and every qubit is acted on
 * by at most `incidence_cap` terms. The incidence constant is left to callers.
 */
bool validate_few_body(const Observable& o, int kappa, int incidence_cap);

/// Dense Kronecker expansion. Throws std::length_error above `dense_cap`.
Matrix to_matrix(const PauliString& p, int dense_cap = kDefaultDenseCap);
Matrix to_matrix(const Observable& o, int dense_cap = kDefaultDenseCap);

/// tr(P M) for a dense 2^n x 2^n matrix M, in O(2^n).
cplx trace_with_pauli(const PauliString& p, const Matrix& m);

/// Throws std::invalid_argument for n outside [1, kMaxQubits].
void require_qubits(int n);
/// Throws std::length_error when n exceeds the dense cap.
void require_dense(int n, int dense_cap = kDefaultDenseCap);

/// Reverses the low n bits: qubit mask -> computational-basis index mask.
constexpr std::uint64_t qubit_mask_to_basis(std::uint64_t mask, int n) noexcept {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    if ((mask >> q) & 1ULL) out |= 1ULL << (n - 1 - q);
  }
  return out;
}

}  // namespace qpsq
