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
#include <vector>

#include "qpsq/channel.hpp"
#include "qpsq/learner.hpp"
#include "qpsq/oracle.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

/// Challenge-response pair.
struct Crp {
  std::uint64_t id = 0;
  SampledState challenge;
  double y = 0.0;
};

struct VerifierState {
  std::vector<Crp> database;
  Observable observable;
  double tau = 0.0;
  /// Device queries spent filling the database.
  std::uint64_t setup_queries = 0;
};

struct ProverState {
  Oracle device;
};

struct AdversaryState {
  Hypothesis hypothesis;
  Hyperparams hyperparams;
  std::uint64_t queries_spent = 0;
};

struct SetupResult {
  VerifierState verifier;
  ProverState prover;
};

/// Fills the database with db_size queries on challenges drawn from d and
/// hands the prover a fresh device over the same channel.
SetupResult setup(const Channel& c, const Observable& o, double tau, std::size_t db_size,
                  StateDistribution d, const OracleMode& mode, Rng& rng);

/// Acceptance test: |y - y'| <= 2 tau.
bool verify(double y, double y_prime, double tau);

struct RoundResult {
  bool pass = false;
  double y = 0.0;
  double response = 0.0;
  std::uint64_t challenge = 0;
};

/// Challenges are drawn uniformly with replacement from the database.
RoundResult honest_round(const VerifierState& v, ProverState& p, Rng& rng);

struct AttackBudget {
  /// Learner query count; empty means the learner's own formula.
  std::optional<std::uint64_t> queries;
  /// Query all 6^n product stabilizer states instead of sampling.
  bool exhaustive = false;
  /// Tolerance of the adversary's queries; empty means the device default.
  std::optional<double> query_tau;
  double delta = 0.1;
};

/// Learning attack: runs the learner with epsilon = tau on the device.
AdversaryState mount_attack(Oracle& device, const Observable& o, double tau, int n,
                            const AttackBudget& budget, Rng& rng, int jobs = 1);

RoundResult attack_round(const VerifierState& v, const AdversaryState& a, Rng& rng);

/// Baseline that always answers tr(O) / 2^n.
RoundResult null_round(const VerifierState& v, Rng& rng);

}  // namespace qpsq
