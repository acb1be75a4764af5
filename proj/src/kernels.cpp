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

#include "qpsq/kernels.hpp"

#include <omp.h>

#include <stdexcept>

#include "qpsq/stats.hpp"

namespace qpsq {

namespace {

void check_inputs(std::span<const StabilizerProductState> states, std::span<const double> y) {
  if (states.size() != y.size()) throw std::invalid_argument("states/labels length mismatch");
}

double correlation(const PauliString& p, std::span<const StabilizerProductState> states,
                   std::span<const double> y) {
  if (states.empty()) return 0.0;
  NeumaierSum s;
  for (std::size_t l = 0; l < states.size(); ++l) {
    const int e = stab_expectation(p, states[l]);
    if (e != 0) s.add(e * y[l]);
  }
  return s.value() / static_cast<double>(states.size());
}

}  // namespace

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

std::vector<double> pauli_correlations_serial(std::span<const PauliString> paulis,
                                              std::span<const StabilizerProductState> states,
                                              std::span<const double> y) {
  check_inputs(states, y);
  std::vector<double> out(paulis.size());
  for (std::size_t i = 0; i < paulis.size(); ++i) out[i] = correlation(paulis[i], states, y);
  return out;
}

std::vector<double> pauli_correlations_parallel(std::span<const PauliString> paulis,
                                                std::span<const StabilizerProductState> states,
                                                std::span<const double> y, int jobs) {
  check_inputs(states, y);
  std::vector<double> out(paulis.size());
  const auto count = static_cast<std::int64_t>(paulis.size());
  const int threads = resolve_jobs(jobs);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t i = 0; i < count; ++i) out[i] = correlation(paulis[i], states, y);
  return out;
}

}  // namespace qpsq
