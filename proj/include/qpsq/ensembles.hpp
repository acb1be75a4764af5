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

#include <string_view>
#include <vector>

#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"

namespace qpsq {

enum class EnsembleKind { Haar, UniformClifford };

std::string_view to_string(EnsembleKind k);
EnsembleKind parse_ensemble(std::string_view name);

/**
 * Haar-random unitary on n qubits.
 *
 * Complex Ginibre matrix -> Householder QR -> multiply Q by the phases of
 * diag(R). Without the phase fix the distribution of Q is not Haar.
 */
Matrix haar_unitary(int n, Rng& rng);

/// A signed Pauli string: (-1)^sign * P.
struct SignedPauli {
  PauliString pauli;
  bool negative = false;
};

/**
 * Clifford tableau: images of X_q and Z_q under conjugation U (.) U^dagger.
 * Determines U up to a global phase.
 */
struct CliffordTableau {
  std::vector<SignedPauli> x_images;
  std::vector<SignedPauli> z_images;

  int num_qubits() const { return static_cast<int>(x_images.size()); }
  /// Dense unitary realising the tableau (global phase fixed arbitrarily).
  Matrix to_unitary(int dense_cap = kDefaultDenseCap) const;
};

/**
 * Uniformly random element of the n-qubit Clifford group modulo phase.
 *
 * Builds a uniformly random symplectic basis pair by pair: each new
 * (v_i, w_i) is drawn uniformly from the symplectic complement of the pairs
 * already chosen, conditioned on <v_i, w_i> = 1, then every image gets an
 * independent uniform sign. The number of choices at each step does not
 * depend on earlier choices, so the result is uniform over Sp(2n, F2) x signs.
 */
CliffordTableau sample_clifford_tableau(int n, Rng& rng);

Matrix uniform_clifford(int n, Rng& rng);

Matrix sample_unitary(EnsembleKind kind, int n, Rng& rng);

/// max |U^dagger U - I| entrywise.
double unitarity_residual(const Matrix& u);

/// Applies (-1)^sign P to a state vector.
Vector apply_pauli(const SignedPauli& p, const Vector& psi);

}  // namespace qpsq
