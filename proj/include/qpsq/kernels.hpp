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

#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

/// Thread count for a jobs request: 0 means the OpenMP default.
int resolve_jobs(int jobs);

/**
 * Runs body(i) for i in [0, count) on up to `jobs` threads. The first
 * exception thrown by any iteration is rethrown after the loop.
 */
template <class Body>
void parallel_for(std::int64_t count, int jobs, Body&& body) {
  std::exception_ptr error;
  std::mutex mu;
  const int threads = resolve_jobs(jobs);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Monte Carlo draw i uses its own generator seeded from (seed, i), so
/// serial and parallel runs produce identical vectors.
template <class F>
auto sample_serial(std::uint64_t count, std::uint64_t seed, F&& f) {
  using T = std::invoke_result_t<F&, std::uint64_t, Rng&>;
  std::vector<T> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, Stream::kSamples, i));
    out.push_back(f(i, rng));
  }
  return out;
}

template <class F>
auto sample_parallel(std::uint64_t count, std::uint64_t seed, F&& f, int jobs = 0) {
  using T = std::invoke_result_t<F&, std::uint64_t, Rng&>;
  std::vector<T> out(count);
  parallel_for(static_cast<std::int64_t>(count), jobs, [&](std::int64_t i) {
    const auto idx = static_cast<std::uint64_t>(i);
    Rng rng(derive_seed(seed, Stream::kSamples, idx));
    out[idx] = f(idx, rng);
  });
  return out;
}

/**
 * Correlation kernel of the learner: for each P,
 *   x_P = (1/N) sum_l y_l <s_l|P|s_l>.
 * Each x_P is a compensated sum taken in record order, so the parallel
 * version (split over Paulis) is bit-identical to the serial one.
 */
std::vector<double> pauli_correlations_serial(std::span<const PauliString> paulis,
                                              std::span<const StabilizerProductState> states,
                                              std::span<const double> y);

std::vector<double> pauli_correlations_parallel(std::span<const PauliString> paulis,
                                                std::span<const StabilizerProductState> states,
                                                std::span<const double> y, int jobs = 0);

}  // namespace qpsq
