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

#include "qpsq/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "qpsq/ensembles.hpp"

namespace qpsq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int checked_unitary_qubits(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2 || (u.rows() & (u.rows() - 1)) != 0) {
    throw std::invalid_argument("unitary must be square with power-of-two side");
  }
  if (unitarity_residual(u) > 1e-10) {
    throw std::invalid_argument("matrix is not unitary (residual " +
                                std::to_string(unitarity_residual(u)) + ")");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(u.rows()));
  require_dense(n);
  return n;
}

Matrix identity_matrix(int n) {
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  return Matrix::Identity(dim, dim);
}

Matrix spike_state(const PauliSpikeChannel& s) {
  const int n = s.pauli.num_qubits();
  const double dim = std::ldexp(1.0, n);
  return (identity_matrix(n) + 3.0 * s.epsilon * to_matrix(s.pauli)) / dim;
}

void check_size(const Channel& c, Eigen::Index dim) {
  if (dim != static_cast<Eigen::Index>(1ULL << c.num_qubits())) {
    throw std::invalid_argument("channel/operand dimension mismatch");
  }
}

}  // namespace

Channel Channel::unitary(Matrix u) {
  const int n = checked_unitary_qubits(u);
  return Channel(UnitaryChannel{std::move(u)}, n);
}

Channel Channel::identity(int n) {
  require_dense(n);
  return Channel(UnitaryChannel{identity_matrix(n)}, n);
}

Channel Channel::depolarizing(int n) {
  require_dense(n);
  return Channel(DepolarizingChannel{n}, n);
}

Channel Channel::pauli_spike(double epsilon, PauliString p) {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 3.0 + 1e-15) {
    throw std::invalid_argument("spike strength must lie in (0, 1/3]");
  }
  if (p.is_identity()) throw std::invalid_argument("spike Pauli must be non-identity");
  const int n = p.num_qubits();
  require_dense(n);
  return Channel(PauliSpikeChannel{epsilon, std::move(p)}, n);
}

Channel Channel::noisy_unitary(Matrix u, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
  }
  const int n = checked_unitary_qubits(u);
  return Channel(NoisyUnitary{std::move(u), lambda}, n);
}

std::string Channel::kind() const {
  return std::visit(overloaded{
                        [](const UnitaryChannel&) { return std::string("unitary"); },
                        [](const DepolarizingChannel&) { return std::string("depolarizing"); },
                        [](const PauliSpikeChannel&) { return std::string("spike"); },
                        [](const NoisyUnitary&) { return std::string("noisy-unitary"); },
                    },
                    v_);
}

DensityMatrix apply(const Channel& c, const DensityMatrix& rho) {
  check_size(c, rho.dim());
  const int n = c.num_qubits();
  const double dim = std::ldexp(1.0, n);
  const cplx tr = rho.matrix().trace();
  return std::visit(
      overloaded{
          [&](const UnitaryChannel& u) {
            return DensityMatrix::trusted(u.u * rho.matrix() * u.u.adjoint());
          },
          [&](const DepolarizingChannel&) {
            return DensityMatrix::trusted(tr * identity_matrix(n) / dim);
          },
          [&](const PauliSpikeChannel& s) {
            return DensityMatrix::trusted(tr * spike_state(s));
          },
          [&](const NoisyUnitary& nu) {
            Matrix out = (1.0 - nu.lambda) * (nu.u * rho.matrix() * nu.u.adjoint());
            out += nu.lambda * tr * identity_matrix(n) / dim;
            return DensityMatrix::trusted(std::move(out));
          },
      },
      c.variant());
}

Matrix heisenberg_adjoint(const Channel& c, const Matrix& o) {
  check_size(c, o.rows());
  const int n = c.num_qubits();
  const double dim = std::ldexp(1.0, n);
  return std::visit(
      overloaded{
          [&](const UnitaryChannel& u) -> Matrix { return u.u.adjoint() * o * u.u; },
          [&](const DepolarizingChannel&) -> Matrix {
            return o.trace() / dim * identity_matrix(n);
          },
          // Replacement channel: E^dagger(O) = tr(O sigma) I.
          [&](const PauliSpikeChannel& s) -> Matrix {
            return (o * spike_state(s)).trace() * identity_matrix(n);
          },
          [&](const NoisyUnitary& nu) -> Matrix {
            return (1.0 - nu.lambda) * (nu.u.adjoint() * o * nu.u) +
                   nu.lambda * o.trace() / dim * identity_matrix(n);
          },
      },
      c.variant());
}

Matrix heisenberg_adjoint(const Channel& c, const Observable& o, int dense_cap) {
  if (o.num_qubits() != c.num_qubits()) {
    throw std::invalid_argument("channel/observable qubit count mismatch");
  }
  return heisenberg_adjoint(c, to_matrix(o, dense_cap));
}

double pauli_coefficient(const Matrix& a, const PauliString& p) {
  if (a.rows() != static_cast<Eigen::Index>(1ULL << p.num_qubits())) {
    throw std::invalid_argument("operator/Pauli dimension mismatch");
  }
  return trace_with_pauli(p, a).real() / static_cast<double>(a.rows());
}

std::vector<double> pauli_coefficients(const Matrix& a, std::span<const PauliString> paulis) {
  std::vector<double> out;
  out.reserve(paulis.size());
  for (const auto& p : paulis) out.push_back(pauli_coefficient(a, p));
  return out;
}

double exact_pauli_coefficient(const Channel& c, const Observable& o, const PauliString& p) {
  return pauli_coefficient(heisenberg_adjoint(c, o), p);
}

}  // namespace qpsq
