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

#include <random>
#include <vector>

#include "qpsq/stats.hpp"

namespace qpsq {
namespace {

TEST(Stats, NeumaierRecoversCancelledTerms) {
  NeumaierSum s;
  for (double x : {1.0, 1e100, 1.0, -1e100}) s.add(x);
  EXPECT_EQ(s.value(), 2.0);
}

TEST(Stats, MeanAndVariance) {
  const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(xs), 5.0);
  EXPECT_DOUBLE_EQ(sample_variance(xs), 32.0 / 7.0);
  const auto e = mean_ci(xs);
  EXPECT_DOUBLE_EQ(e.value, 5.0);
  EXPECT_NEAR(e.half_width, kZ95 * std::sqrt(32.0 / 7.0 / 8.0), 1e-12);
}

TEST(Stats, WilsonKnownValues) {
  // Reference: statsmodels proportion_confint(8, 10, alpha=0.05, method="wilson").
  const auto w = wilson(8, 10);
  EXPECT_NEAR(w.low, 0.49016247153664183, 1e-12);
  EXPECT_NEAR(w.high, 0.9433178485456247, 1e-12);
  const auto zero = wilson(0, 100);
  EXPECT_DOUBLE_EQ(zero.low, 0.0);
  EXPECT_GT(zero.high, 0.0);
  const auto all = wilson(50, 50);
  EXPECT_NEAR(all.high, 1.0, 1e-12);
  const auto none = wilson(0, 0);
  EXPECT_DOUBLE_EQ(none.low, 0.0);
  EXPECT_DOUBLE_EQ(none.high, 1.0);
  EXPECT_THROW(wilson(6, 5), std::invalid_argument);
}

TEST(Stats, BootstrapVarianceDeterministicAndSensible) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 2.0);
  std::vector<double> xs(4000);
  for (auto& x : xs) x = g(rng);
  const auto a = bootstrap_variance(xs, 500, 42);
  const auto b = bootstrap_variance(xs, 500, 42);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.half_width, b.half_width);
  EXPECT_DOUBLE_EQ(a.value, sample_variance(xs));
  // sd of the variance estimator ~ sigma^2 sqrt(2/(n-1)) = 0.0894.
  EXPECT_NEAR(a.half_width, kZ95 * 4.0 * std::sqrt(2.0 / 3999.0), 0.05);
  EXPECT_NEAR(a.value, 4.0, 0.4);
}

}  // namespace
}  // namespace qpsq
