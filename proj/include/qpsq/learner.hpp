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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpsq/channel.hpp"
#include "qpsq/oracle.hpp"
#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

struct HyperparamOverrides {
  std::optional<double> tau;
  std::optional<std::uint64_t> queries;
  double c_tilde = 1.0;
  /// Enforce tau < epsilon_tilde and refuse an N override.
  bool theory_mode = false;
};

struct Hyperparams {
  double epsilon = 0.0;
  /// ceil(log_1.5(2 / eps^2)).
  int k = 0;
  /// min(k, n): the largest degree that exists on n qubits.
  int k_effective = 0;
  double epsilon_tilde = 0.0;
  double tau = 0.0;
  /// Query count actually used (the override when one is given).
  std::uint64_t N = 0;
  /// Hoeffding value before rounding; +inf when tau >= epsilon_tilde.
  double N_theory = 0.0;
  double c_tilde = 1.0;
  double delta = 0.0;
  int M = 1;
};

/**
 * Learner hyperparameters:
 *   k = ceil(log_1.5(2/eps^2)),  eps~ = c~ eps^2 / (2n)^k,  tau = eps~/2,
 *   N = ceil(2 (1+tau)^2 ln(2 M (3n)^k / delta) / (eps~ - tau)^2).
 * epsilon must lie in (0, 1]; delta in (0, 1).
 */
Hyperparams derive_hyperparams(double epsilon, int n, double delta, int M = 1,
                               const HyperparamOverrides& overrides = {});

/// ceil(2 tau^2 ln(2 M (3n)^k / delta) / eps~^2): the learner's query count
/// with the unspecified constant set to 2.
double corollary_query_count(const Hyperparams& hp, int n);

struct TrainingRecord {
  StabilizerProductState state;
  double y = 0.0;
};

struct TrainingSet {
  std::vector<TrainingRecord> records;
  bool exhaustive = false;
};

inline constexpr int kExhaustiveCap = 5;

/**
 * Queries the oracle once per record. Sampled mode draws N uniform product
 * stabilizer states; exhaustive mode walks all 6^n of them in index order
 * and ignores N. Record l uses a generator derived from (rng(), l), so the
 * result does not depend on `jobs`.
 */
TrainingSet gather_data(Oracle& oracle, int n, std::uint64_t N, const Observable& o, double tau,
                        Rng& rng, bool exhaustive = false, int jobs = 1,
                        int exhaustive_cap = kExhaustiveCap);

struct HypothesisEntry {
  PauliString pauli;
  double alpha = 0.0;
};

struct Hypothesis {
  std::string observable;
  int n = 0;
  int k = 0;
  /// Non-zero coefficients in canonical order.
  std::vector<HypothesisEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  /// alpha for p, or 0 when p is not stored.
  double coefficient(const PauliString& p) const;
};

/// x_P for each P in `paulis` (no thresholding).
std::vector<double> estimate_raw(const TrainingSet& data, std::span<const PauliString> paulis,
                                 int jobs = 1);

/**
 * Thresholded estimate. For each P with |P| <= min(k, n), alpha_P = 3^|P| x_P
 * is kept iff (1/3)^|P| > 2 eps~ and |x_P| > 2 3^{|P|/2} sqrt(eps~) ||O||_1.
 */
Hypothesis estimate_coefficients(const TrainingSet& data, const Observable& o, int k,
                                 double epsilon_tilde, int jobs = 1);

using PauliExpectations = std::unordered_map<PauliString, double, PauliHash>;

/// sum_P alpha_P tr(P rho). Throws std::out_of_range for a missing key.
double predict(const Hypothesis& h, const PauliExpectations& expectations);
double predict(const Hypothesis& h, const DensityMatrix& rho);
double predict(const Hypothesis& h, const StabilizerProductState& s);

/// Root-mean-square of predict - tr(O E(rho)) over n_test draws from d.
double evaluate_rms(const Hypothesis& h, const Channel& c, const Observable& o,
                    StateDistribution d, std::uint64_t n_test, Rng& rng, int jobs = 1);
/// Same, with E^dagger(O) precomputed and an explicit seed.
double evaluate_rms(const Hypothesis& h, const Matrix& evolved_observable, StateDistribution d,
                    std::uint64_t n_test, std::uint64_t seed, int jobs = 1);

struct LearnResult {
  Hyperparams hyperparams;
  std::vector<Hypothesis> hypotheses;
  std::uint64_t queries_used = 0;
};

/// Runs the learner once per observable on fresh data, each with failure
/// probability delta / M.
LearnResult learn(Oracle& oracle, std::span<const Observable> observables, double epsilon,
                  double delta, const HyperparamOverrides& overrides, Rng& rng, int jobs = 1);

}  // namespace qpsq
