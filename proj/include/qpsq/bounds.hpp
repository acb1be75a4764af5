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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpsq/ensembles.hpp"
#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v);

struct ReportRow {
  std::string check;
  std::string params;
  double estimate = 0.0;
  /// 95% half-width (or the slack that was applied).
  double ci = 0.0;
  double bound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct ExperimentReport {
  std::string name;
  std::vector<ReportRow> rows;

  /// Fail if any row fails, else Inconclusive if any row is, else Pass.
  Verdict overall() const;
  void append(const ExperimentReport& other);
};

/// CSV header and rows: check,params,estimate,ci,bound,verdict
std::string to_csv(const ExperimentReport& r);

/**
 * Sample variance of tr(O U rho U^dagger) over `samples` draws of U.
 * Pass iff variance <= 1/(2^n+1) + 3 * bootstrap half-width.
 */
ExperimentReport variance_experiment(EnsembleKind kind, int n, const DensityMatrix& rho,
                                     const Observable& o, std::uint64_t samples, Rng& rng,
                                     int jobs = 0, int resamples = 1000);

/**
 * Exceedance Pr[|tr(Z_1 U|0><0|U^dagger)| > tau] for Haar U at each n.
 * One row per n (bound 2 exp(-2^n tau^2 / 48), Wilson slack) plus one
 * row for monotone non-increase across consecutive n.
 */
ExperimentReport concentration_experiment(std::span<const int> ns, double tau,
                                          std::uint64_t samples, Rng& rng, int jobs = 0);

/// tr(Q Phi_{eps,P}(rho)) = 3 eps delta_{PQ} and tr(P Phi_dep(rho)) = 0,
/// checked to 1e-10 over `num_states` random mixed states.
ExperimentReport spike_distinguish_check(int n, double epsilon,
                                         std::span<const PauliString> paulis, Rng& rng,
                                         int num_states = 10);

/// Entrywise |mean(U rho U^dagger) - I/2^n|; pass iff every entry is within
/// 3 of its 95% half-widths. One sample gives Inconclusive.
ExperimentReport mean_channel_check(EnsembleKind kind, int n, std::uint64_t samples, Rng& rng,
                                    int jobs = 0);

}  // namespace qpsq
