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

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qpsq/pauli.hpp"

namespace qpsq {
namespace {

using testing::kron_pauli;
using testing::max_abs;

TEST(PauliString, ParseRoundTrip) {
  for (const std::string s : {"I", "X", "IZXI", "YYZ", "XIIIIIIIIIIY"}) {
    EXPECT_EQ(PauliString::parse(s).to_string(), s);
  }
}

TEST(PauliString, RejectsBadInput) {
  EXPECT_THROW(PauliString::parse("IXQ"), std::invalid_argument);
  EXPECT_THROW(PauliString::parse(""), std::invalid_argument);
  EXPECT_THROW(PauliString(2, 0b100, 0), std::invalid_argument);
  EXPECT_THROW(PauliString(65), std::invalid_argument);
}

TEST(PauliString, DegreeExamples) {
  EXPECT_EQ(PauliString::parse("IZ").degree(), 1);
  EXPECT_EQ(PauliString::parse("III").degree(), 0);
  EXPECT_EQ(PauliString::parse("XYZ").degree(), 3);
}

TEST(PauliString, SingleAndWith) {
  auto p = PauliString::single(3, 1, Pauli::Y);
  EXPECT_EQ(p.to_string(), "IYI");
  EXPECT_EQ(p.with(0, Pauli::Z).with(1, Pauli::I).to_string(), "ZII");
  EXPECT_EQ(p.at(1), Pauli::Y);
  EXPECT_THROW(p.at(3), std::out_of_range);
}

TEST(LowDegree, CountExamples) {
  EXPECT_EQ(enumerate_low_degree(2, 1).size(), 7u);
  EXPECT_EQ(enumerate_low_degree(2, 2).size(), 16u);
  EXPECT_EQ(enumerate_low_degree(3, 2).size(), 37u);
  EXPECT_THROW(enumerate_low_degree(2, 3), std::invalid_argument);
  EXPECT_THROW(enumerate_low_degree(2, -1), std::invalid_argument);
}

TEST(LowDegree, MatchesBruteForceFilter) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::set<std::string> expected;
      for (const auto& s : testing::all_pauli_strings(n)) {
        if (testing::weight(s) <= k) expected.insert(s);
      }
      const auto got = enumerate_low_degree(n, k);
      std::set<std::string> got_set;
      for (const auto& p : got) got_set.insert(p.to_string());
      EXPECT_EQ(got_set, expected) << "n=" << n << " k=" << k;
      EXPECT_EQ(got.size(), expected.size());
      EXPECT_EQ(count_low_degree(n, k), expected.size());
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), CanonicalLess{}));
    }
  }
}

TEST(LowDegree, CanonicalOrderSmall) {
  const auto ps = enumerate_low_degree(2, 1);
  std::vector<std::string> s;
  for (const auto& p : ps) s.push_back(p.to_string());
  EXPECT_EQ(s, (std::vector<std::string>{"II", "XI", "YI", "ZI", "IX", "IY", "IZ"}));
}

TEST(Dense, MatchesKroneckerOracle) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& s : testing::all_pauli_strings(n)) {
      EXPECT_LT(max_abs(to_matrix(PauliString::parse(s)) - kron_pauli(s)), 1e-15) << s;
    }
  }
}

TEST(Dense, Examples) {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  EXPECT_EQ(to_matrix(PauliString::parse("Z")), z);
  EXPECT_EQ(to_matrix(PauliString::parse("II")), Matrix::Identity(4, 4));
  Observable o(2, {{0.5, PauliString::parse("ZI")}, {0.5, PauliString::parse("IZ")}});
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 1, 0, 0, -1;
  EXPECT_LT(max_abs(to_matrix(o) - d), 1e-15);
}

TEST(Dense, CapEnforced) {
  EXPECT_THROW(to_matrix(PauliString(11)), std::length_error);
  EXPECT_THROW(to_matrix(PauliString(4), 3), std::length_error);
}

TEST(Dense, TraceWithPauliMatchesDense) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 3; ++n) {
    const int d = 1 << n;
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
    for (const auto& s : testing::all_pauli_strings(n)) {
      const cplx want = (kron_pauli(s) * a).trace();
      EXPECT_LT(std::abs(trace_with_pauli(PauliString::parse(s), a) - want), 1e-12) << s;
    }
  }
}

TEST(Commutation, MatchesDenseCommutator) {
  const auto all = testing::all_pauli_strings(2);
  for (const auto& a : all) {
    for (const auto& b : all) {
      const Matrix ma = kron_pauli(a), mb = kron_pauli(b);
      const bool dense = max_abs(ma * mb - mb * ma) < 1e-12;
      EXPECT_EQ(commutes(PauliString::parse(a), PauliString::parse(b)), dense) << a << " " << b;
    }
  }
}

TEST(Observable, RejectsDuplicatesAndMismatch) {
  EXPECT_THROW(Observable(2, {{1, PauliString::parse("ZI")}, {1, PauliString::parse("ZI")}}),
               std::invalid_argument);
  EXPECT_THROW(Observable(2, {{1, PauliString::parse("Z")}}), std::invalid_argument);
  EXPECT_THROW(Observable(1, {{std::nan(""), PauliString::parse("Z")}}), std::invalid_argument);
}

TEST(Observable, NormsAndIds) {
  Observable o(2, {{0.25, PauliString::parse("II")}, {-0.5, PauliString::parse("XZ")}});
  EXPECT_DOUBLE_EQ(o.pauli_1_norm(), 0.75);
  EXPECT_DOUBLE_EQ(o.identity_coefficient(), 0.25);
  EXPECT_EQ(o.max_degree(), 2);
  EXPECT_NEAR(o.operator_norm(), 0.75, 1e-12);
  EXPECT_EQ(o.to_string(), "0.25*II-0.5*XZ");
  const auto sum = o + Observable::parse_pauli("XZ", 0.5);
  EXPECT_NEAR(sum.terms()[1].coeff, 0.0, 0.0);
}

TEST(FewBody, Examples) {
  EXPECT_TRUE(validate_few_body(Observable::parse_pauli("ZIIIII"), 1, 1));
  Observable ring(4, {{1, PauliString::parse("ZZII")},
                      {1, PauliString::parse("IZZI")},
                      {1, PauliString::parse("IIZZ")}});
  EXPECT_TRUE(validate_few_body(ring, 2, 2));
  EXPECT_FALSE(validate_few_body(ring, 2, 1));
  EXPECT_FALSE(validate_few_body(Observable::parse_pauli("XYZ"), 2, 5));
}

TEST(BitOrder, QubitMaskToBasis) {
  EXPECT_EQ(qubit_mask_to_basis(0b001, 3), 0b100u);
  EXPECT_EQ(qubit_mask_to_basis(0b011, 3), 0b110u);
  EXPECT_EQ(qubit_mask_to_basis(0, 5), 0u);
}

}  // namespace
}  // namespace qpsq
