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

#include <cmath>
#include <cstdint>
#include <span>

namespace qpsq {

/// Neumaier compensated summation.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    comp_ += (std::abs(sum_) >= std::abs(x)) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

double mean(std::span<const double> xs);
/// Unbiased sample variance (divides by count - 1).
double sample_variance(std::span<const double> xs);

struct Estimate {
  double value = 0.0;
  /// 95% confidence half-width.
  double half_width = 0.0;
  double low() const { return value - half_width; }
  double high() const { return value + half_width; }
};

/// Mean with normal-approximation 95% half-width.
Estimate mean_ci(std::span<const double> xs);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// Sample variance with a percentile-bootstrap 95% interval; half_width is
/// half the interval length.
Estimate bootstrap_variance(std::span<const double> xs, int resamples, std::uint64_t seed);

}  // namespace qpsq
