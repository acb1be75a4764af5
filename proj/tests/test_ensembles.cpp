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

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "oracles.hpp"
#include "qpsq/ensembles.hpp"
#include "qpsq/kernels.hpp"
#include "qpsq/state.hpp"

namespace qpsq {
namespace {

using testing::kron_pauli;
using testing::max_abs;

// Returns "+P" / "-P" when m = +-P for a Pauli string P, else "".
std::string signed_pauli_of(const Matrix& m, int n) {
  for (const auto& s : testing::all_pauli_strings(n)) {
    const cplx c = (kron_pauli(s) * m).trace() / static_cast<double>(1 << n);
    if (std::abs(std::abs(c) - 1.0) < 1e-10 && std::abs(c.imag()) < 1e-10) {
      return (c.real() > 0 ? "+" : "-") + s;
    }
  }
  return "";
}

TEST(Haar, Unitary) {
  Rng rng(1);
  for (int n = 1; n <= 5; ++n) EXPECT_LT(unitarity_residual(haar_unitary(n, rng)), 1e-10);
}

TEST(Haar, DeterministicGivenSeed) {
  Rng a(99), b(99);
  EXPECT_EQ(haar_unitary(3, a), haar_unitary(3, b));
  Rng c(99), d(99);
  EXPECT_EQ(uniform_clifford(3, c), uniform_clifford(3, d));
}

TEST(Haar, FirstMomentIsDepolarizing) {
  // n = 2: mean of U rho U^dagger within 0.01 of I/4 over 1e5 draws.
  const auto rho = density_of(StabilizerProductState::parse("0+"));
  const auto outs = sample_parallel(100000, 5, [&](std::uint64_t, Rng& r) {
    const Matrix u = haar_unitary(2, r);
    return Matrix(u * rho.matrix() * u.adjoint());
  });
  Matrix acc = Matrix::Zero(4, 4);
  for (const auto& m : outs) acc += m;
  acc /= static_cast<double>(outs.size());
  EXPECT_LT(max_abs(acc - Matrix::Identity(4, 4) / 4.0), 0.01);
}

TEST(Haar, EntryMoments) {
  // |U_00|^2 ~ Beta(1, d-1): mean 1/d, second moment 2/(d(d+1)).
  const int n = 3, d = 8, draws = 40000;
  const auto xs = sample_serial(draws, 11, [&](std::uint64_t, Rng& r) {
    return std::norm(haar_unitary(n, r)(0, 0));
  });
  double m1 = 0, m2 = 0;
  for (double x : xs) {
    m1 += x;
    m2 += x * x;
  }
  m1 /= draws;
  m2 /= draws;
  EXPECT_NEAR(m1, 1.0 / d, 0.003);
  EXPECT_NEAR(m2, 2.0 / (d * (d + 1)), 0.001);
}

TEST(Haar, LeftInvarianceOfFirstColumnPhase) {
  // Under Haar measure, arg(U_00) is uniform; a missing phase fix makes it
  // concentrate at 0.
  Rng rng(4);
  int positive_real = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    const cplx u = haar_unitary(1, rng)(0, 0);
    if (std::abs(std::arg(u)) < std::acos(-1.0) / 4) ++positive_real;
  }
  EXPECT_NEAR(positive_real / static_cast<double>(draws), 0.25, 0.03);
}

TEST(Clifford, ConjugatesPaulisToPaulis) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Matrix u = uniform_clifford(3, rng);
    EXPECT_LT(unitarity_residual(u), 1e-10);
    for (const std::string p : {"ZII", "IXI", "IIY"}) {
      EXPECT_FALSE(signed_pauli_of(u * kron_pauli(p) * u.adjoint(), 3).empty()) << p;
    }
  }
}

TEST(Clifford, DenseUnitaryRealisesTableau) {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto t = sample_clifford_tableau(3, rng);
    const Matrix u = t.to_unitary();
    for (int q = 0; q < 3; ++q) {
      const auto check = [&](const SignedPauli& img, Pauli src) {
        const Matrix conj = u * to_matrix(PauliString::single(3, q, src)) * u.adjoint();
        const Matrix want = (img.negative ? -1.0 : 1.0) * to_matrix(img.pauli);
        EXPECT_LT(max_abs(conj - want), 1e-10);
      };
      check(t.x_images[q], Pauli::X);
      check(t.z_images[q], Pauli::Z);
    }
  }
}

TEST(Clifford, SingleQubitGroupUniform) {
  // Classes modulo phase are identified by the signed images of X and Z.
  const int draws = 100000;
  const auto keys = sample_serial(draws, 13, [](std::uint64_t, Rng& r) {
    const Matrix u = uniform_clifford(1, r);
    return signed_pauli_of(u * kron_pauli("X") * u.adjoint(), 1) + "," +
           signed_pauli_of(u * kron_pauli("Z") * u.adjoint(), 1);
  });
  std::map<std::string, int> counts;
  for (const auto& k : keys) ++counts[k];
  ASSERT_EQ(counts.size(), 24u);
  const double expected = draws / 24.0;
  double chi2 = 0;
  for (const auto& [k, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(23);
  const double p = boost::math::cdf(boost::math::complement(dist, chi2));
  EXPECT_GT(p, 1e-3) << "chi2=" << chi2;
}

TEST(Clifford, FirstMomentIsDepolarizing) {
  const auto rho = density_of(StabilizerProductState::parse("0+"));
  const auto outs = sample_parallel(100000, 21, [&](std::uint64_t, Rng& r) {
    const Matrix u = uniform_clifford(2, r);
    return Matrix(u * rho.matrix() * u.adjoint());
  });
  Matrix acc = Matrix::Zero(4, 4);
  for (const auto& m : outs) acc += m;
  acc /= static_cast<double>(outs.size());
  EXPECT_LT(max_abs(acc - Matrix::Identity(4, 4) / 4.0), 0.02);
}

TEST(Ensembles, Names) {
  EXPECT_EQ(parse_ensemble("haar"), EnsembleKind::Haar);
  EXPECT_EQ(parse_ensemble("clifford"), EnsembleKind::UniformClifford);
  EXPECT_THROW(parse_ensemble("brickwork"), std::invalid_argument);
  Rng rng(1);
  EXPECT_THROW(haar_unitary(11, rng), std::length_error);
}

}  // namespace
}  // namespace qpsq
