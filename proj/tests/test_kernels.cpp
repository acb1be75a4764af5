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

#include <stdexcept>

#include "qpsq/kernels.hpp"

namespace qpsq {
namespace {

struct Records {
  std::vector<StabilizerProductState> states;
  std::vector<double> y;
};

Records make_records(int n, std::size_t count, std::uint64_t seed) {
  Records r;
  Rng rng(seed);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < count; ++i) {
    r.states.push_back(sample_stabilizer_product(n, rng));
    r.y.push_back(g(rng));
  }
  return r;
}

TEST(Kernels, CorrelationsSerialEqualsParallelBitwise) {
  const auto rec = make_records(5, 3000, 1);
  const auto paulis = enumerate_low_degree(5, 3);
  const auto serial = pauli_correlations_serial(paulis, rec.states, rec.y);
  for (int jobs : {1, 2, 3, 8}) {
    const auto par = pauli_correlations_parallel(paulis, rec.states, rec.y, jobs);
    ASSERT_EQ(par.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      EXPECT_EQ(par[i], serial[i]) << "jobs=" << jobs << " P=" << paulis[i].to_string();
    }
  }
}

TEST(Kernels, CorrelationsMatchNaiveSum) {
  const auto rec = make_records(3, 500, 2);
  const auto paulis = enumerate_low_degree(3, 3);
  const auto got = pauli_correlations_serial(paulis, rec.states, rec.y);
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    double acc = 0;
    for (std::size_t l = 0; l < rec.y.size(); ++l) {
      acc += rec.y[l] * pauli_expectation(paulis[i], density_of(rec.states[l]));
    }
    EXPECT_NEAR(got[i], acc / rec.y.size(), 1e-12);
  }
}

TEST(Kernels, CorrelationsRejectMismatch) {
  const auto rec = make_records(2, 10, 3);
  std::vector<double> short_y(rec.y.begin(), rec.y.begin() + 5);
  const auto paulis = enumerate_low_degree(2, 1);
  EXPECT_THROW(pauli_correlations_serial(paulis, rec.states, short_y), std::invalid_argument);
  EXPECT_THROW(pauli_correlations_parallel(paulis, rec.states, short_y, 2),
               std::invalid_argument);
}

TEST(Kernels, SampleSerialEqualsParallel) {
  auto draw = [](std::uint64_t i, Rng& r) {
    std::normal_distribution<double> g;
    return g(r) + static_cast<double>(i);
  };
  const auto a = sample_serial(5000, 77, draw);
  for (int jobs : {1, 2, 4}) EXPECT_EQ(sample_parallel(5000, 77, draw, jobs), a);
  EXPECT_NE(sample_serial(5000, 78, draw), a);
}

TEST(Kernels, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::int64_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Kernels, ParallelForVisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 3, [&](std::int64_t i) { ++hits[static_cast<std::size_t>(i)]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Kernels, ResolveJobs) {
  EXPECT_EQ(resolve_jobs(3), 3);
  EXPECT_GE(resolve_jobs(0), 1);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, Stream::kGather, 0), derive_seed(1, Stream::kGather, 1));
  EXPECT_NE(derive_seed(1, Stream::kGather, 0), derive_seed(1, Stream::kTest, 0));
  EXPECT_NE(derive_seed(1, Stream::kGather, 0), derive_seed(2, Stream::kGather, 0));
  static_assert(derive_seed(5, Stream::kRounds, 3) == derive_seed(5, Stream::kRounds, 3));
}

}  // namespace
}  // namespace qpsq
