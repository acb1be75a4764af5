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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qpsq/pauli.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

struct UnitaryChannel {
  Matrix u;
};

/// rho -> tr(rho) I / 2^n
struct DepolarizingChannel {
  int n;
};

/// rho -> tr(rho) (I + 3 eps P) / 2^n, 0 < eps <= 1/3, P non-identity.
struct PauliSpikeChannel {
  double epsilon;
  PauliString pauli;
};

/// rho -> (1 - lambda) U rho U^dagger + lambda I / 2^n
struct NoisyUnitary {
  Matrix u;
  double lambda;
};

/// Immutable quantum process in Schrodinger form.
class Channel {
 public:
  using Variant =
      std::variant<UnitaryChannel, DepolarizingChannel, PauliSpikeChannel, NoisyUnitary>;

  static Channel unitary(Matrix u);
  static Channel identity(int n);
  static Channel depolarizing(int n);
  static Channel pauli_spike(double epsilon, PauliString p);
  static Channel noisy_unitary(Matrix u, double lambda);

  int num_qubits() const noexcept { return n_; }
  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;

 private:
  Channel(Variant v, int n) : v_(std::move(v)), n_(n) {}
  Variant v_;
  int n_;
};

DensityMatrix apply(const Channel& c, const DensityMatrix& rho);

/// Dense E^dagger(O) with tr(O E(rho)) = tr(E^dagger(O) rho).
Matrix heisenberg_adjoint(const Channel& c, const Matrix& o);
Matrix heisenberg_adjoint(const Channel& c, const Observable& o,
                          int dense_cap = kDefaultDenseCap);

/// alpha_P = tr(P A) / 2^n for a dense operator A.
double pauli_coefficient(const Matrix& a, const PauliString& p);
std::vector<double> pauli_coefficients(const Matrix& a, std::span<const PauliString> paulis);

/// alpha_P(O): Pauli coefficient of the Heisenberg-evolved observable.
double exact_pauli_coefficient(const Channel& c, const Observable& o, const PauliString& p);

}  // namespace qpsq
