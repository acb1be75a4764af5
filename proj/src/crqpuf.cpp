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

#include "qpsq/crqpuf.hpp"

#include <cmath>
#include <stdexcept>

namespace qpsq {

namespace {

const Crp& pick(const VerifierState& v, Rng& rng) {
  if (v.database.empty()) throw std::logic_error("verifier database is empty");
  std::uniform_int_distribution<std::size_t> d(0, v.database.size() - 1);
  return v.database[d(rng)];
}

RoundResult judge(const VerifierState& v, const Crp& crp, double response) {
  return {verify(crp.y, response, v.tau), crp.y, response, crp.id};
}

}  // namespace

SetupResult setup(const Channel& c, const Observable& o, double tau, std::size_t db_size,
                  StateDistribution d, const OracleMode& mode, Rng& rng) {
  if (db_size < 1) throw std::invalid_argument("database size must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const int n = c.num_qubits();
  Oracle enrolment(c, mode, tau);
  VerifierState v{{}, o, tau, 0};
  v.database.reserve(db_size);
  for (std::size_t i = 0; i < db_size; ++i) {
    auto challenge = sample_state(d, n, rng);
    const double y = enrolment.query(challenge.rho, o, tau, rng);
    v.database.push_back({i, std::move(challenge), y});
  }
  v.setup_queries = enrolment.query_count();
  return {std::move(v), ProverState{Oracle(c, mode, tau)}};
}

bool verify(double y, double y_prime, double tau) { return std::abs(y - y_prime) <= 2.0 * tau; }

RoundResult honest_round(const VerifierState& v, ProverState& p, Rng& rng) {
  const Crp& crp = pick(v, rng);
  return judge(v, crp, p.device.query(crp.challenge.rho, v.observable, v.tau, rng));
}

AdversaryState mount_attack(Oracle& device, const Observable& o, double tau, int n,
                            const AttackBudget& budget, Rng& rng, int jobs) {
  HyperparamOverrides ov;
  ov.tau = budget.query_tau.value_or(device.default_tau());
  ov.queries = budget.queries;
  // Exhaustive data has a fixed size, so no query count is derived.
  if (budget.exhaustive && !ov.queries) {
    std::uint64_t all = 1;
    for (int q = 0; q < n; ++q) all *= 6;
    ov.queries = all;
  }
  AdversaryState a;
  a.hyperparams = derive_hyperparams(std::min(tau, 1.0), n, budget.delta, 1, ov);
  const auto before = device.query_count();
  const auto data = gather_data(device, n, a.hyperparams.N, o, a.hyperparams.tau, rng,
                                budget.exhaustive, jobs);
  a.hypothesis =
      estimate_coefficients(data, o, a.hyperparams.k, a.hyperparams.epsilon_tilde, jobs);
  a.queries_spent = device.query_count() - before;
  return a;
}

RoundResult attack_round(const VerifierState& v, const AdversaryState& a, Rng& rng) {
  const Crp& crp = pick(v, rng);
  return judge(v, crp, predict(a.hypothesis, crp.challenge.rho));
}

RoundResult null_round(const VerifierState& v, Rng& rng) {
  const Crp& crp = pick(v, rng);
  return judge(v, crp, v.observable.identity_coefficient());
}

}  // namespace qpsq
