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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"

namespace qpsq {

/// The six single-qubit Pauli eigenstates.
enum class StabLabel : std::uint8_t { Zero, One, Plus, Minus, PlusY, MinusY };

inline constexpr std::array<StabLabel, 6> kAllStabLabels = {
    StabLabel::Zero, StabLabel::One,  StabLabel::Plus,
    StabLabel::Minus, StabLabel::PlusY, StabLabel::MinusY};

std::string_view label_text(StabLabel l);

/**
 * Tensor product of single-qubit stabilizer states.
 *
 * Besides the labels the state keeps three masks: the Pauli basis of each
 * qubit (x/z bits in the same encoding as PauliString) and the eigenvalue
 * sign. Expectation of any Pauli string is then a couple of bit operations.
 */
class StabilizerProductState {
 public:
  explicit StabilizerProductState(std::vector<StabLabel> labels);

  /// Parses labels such as "0+-y" (0, 1, +, -, +y, -y). U+2212 is accepted
  /// as a minus sign.
  static StabilizerProductState parse(std::string_view text);
  /// Mixed-radix index in [0, 6^n) -> state; qubit 0 is the most significant digit.
  static StabilizerProductState from_index(int n, std::uint64_t index);

  int num_qubits() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<StabLabel>& labels() const noexcept { return labels_; }
  std::uint64_t basis_x() const noexcept { return bx_; }
  std::uint64_t basis_z() const noexcept { return bz_; }
  std::uint64_t sign_bits() const noexcept { return sign_; }

  std::string to_string() const;

  friend bool operator==(const StabilizerProductState& a,
                         const StabilizerProductState& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<StabLabel> labels_;
  std::uint64_t bx_ = 0, bz_ = 0, sign_ = 0;
};

/// Product of <s_i|P_i|s_i>; in {-1, 0, +1}. Throws on size mismatch.
int stab_expectation(const PauliString& p, const StabilizerProductState& s);

/// Dense state vector of a product stabilizer state.
Vector state_vector(const StabilizerProductState& s,
                    int dense_cap = kDefaultDenseCap);

/**
 * Dense density matrix. The checked constructor enforces Hermiticity,
 * unit trace and positivity; factories that build states by construction
 * skip the eigendecomposition.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tol = 1e-10);

  static DensityMatrix trusted(Matrix m);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int n);
  static DensityMatrix basis_state(int n, std::uint64_t index);

  int num_qubits() const noexcept { return n_; }
  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  double trace() const { return m_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;
  bool satisfies_invariants(double tol = 1e-10) const;

 private:
  DensityMatrix(Matrix m, int n) : m_(std::move(m)), n_(n) {}
  Matrix m_;
  int n_;
};

DensityMatrix density_of(const StabilizerProductState& s,
                         int dense_cap = kDefaultDenseCap);

enum class StateDistribution { ComputationalBasis, StabilizerProduct, Haar };

std::string_view to_string(StateDistribution d);
/// Accepts "computational", "stabilizer", "haar" (and the long spellings).
StateDistribution parse_distribution(std::string_view name);

struct SampledState {
  std::string description;
  /// Set for computational-basis and stabilizer-product draws.
  std::optional<StabilizerProductState> product;
  DensityMatrix rho;
};

SampledState sample_state(StateDistribution d, int n, Rng& rng);

/// Full-rank mixed state G G^dagger / tr(G G^dagger) for a complex Ginibre G.
DensityMatrix random_density_matrix(int n, Rng& rng);

/// Uniform product stabilizer state (each qubit uniform over the six labels).
StabilizerProductState sample_stabilizer_product(int n, Rng& rng);

/// Re tr(P rho) in O(2^n).
double pauli_expectation(const PauliString& p, const DensityMatrix& rho);

/// Re tr(O rho); throws on size mismatch or a non-negligible imaginary part.
double expectation(const Observable& o, const DensityMatrix& rho);
/// Re tr(A rho) for a dense operator A.
double expectation(const Matrix& a, const DensityMatrix& rho);

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qpsq
