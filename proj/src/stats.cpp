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

#include "qpsq/stats.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qpsq/rng.hpp"

namespace qpsq {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs at least two samples");
  const double m = mean(xs);
  NeumaierSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(xs.size() - 1);
}

Estimate mean_ci(std::span<const double> xs) {
  Estimate e;
  e.value = mean(xs);
  if (xs.size() >= 2) {
    e.half_width = kZ95 * std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
  }
  return e;
}

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

Estimate bootstrap_variance(std::span<const double> xs, int resamples, std::uint64_t seed) {
  if (resamples < 1) throw std::invalid_argument("resamples must be >= 1");
  const double v = sample_variance(xs);
  const std::size_t n = xs.size();
  const double shift = xs[0];  // centring keeps the one-pass moments accurate
  std::vector<double> stats(static_cast<std::size_t>(resamples));
#pragma omp parallel for schedule(static)
  for (int b = 0; b < resamples; ++b) {
    Rng rng(derive_seed(seed, Stream::kBootstrap, static_cast<std::uint64_t>(b)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = xs[pick(rng)] - shift;
      s1 += x;
      s2 += x * x;
    }
    const double m = s1 / static_cast<double>(n);
    stats[b] = (s2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
  }
  std::sort(stats.begin(), stats.end());
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::lround(q * static_cast<double>(stats.size() - 1)));
    return stats[idx];
  };
  return {v, 0.5 * (at(0.975) - at(0.025))};
}

}  // namespace qpsq
