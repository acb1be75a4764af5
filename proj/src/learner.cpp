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

#include "qpsq/learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpsq/kernels.hpp"
#include "qpsq/stats.hpp"

namespace qpsq {

namespace {

std::uint64_t saturating_ceil(double x) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (!std::isfinite(x) || x >= static_cast<double>(kMax)) return kMax;
  return static_cast<std::uint64_t>(std::ceil(x));
}

std::uint64_t pow6(int n) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) v *= 6;
  return v;
}

}  // namespace

Hyperparams derive_hyperparams(double epsilon, int n, double delta, int M,
                               const HyperparamOverrides& ov) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  require_qubits(n);
  if (M < 1) throw std::invalid_argument("observable count must be >= 1");
  if (!(ov.c_tilde > 0.0)) throw std::invalid_argument("c_tilde must be > 0");

  Hyperparams hp;
  hp.epsilon = epsilon;
  hp.delta = delta;
  hp.M = M;
  hp.c_tilde = ov.c_tilde;
  // Nudge down so exact powers of 1.5 do not round up through log error.
  const double raw_k = std::log(2.0 / (epsilon * epsilon)) / std::log(1.5);
  hp.k = static_cast<int>(std::ceil(raw_k - 1e-12));
  hp.k_effective = std::min(hp.k, n);
  hp.epsilon_tilde = ov.c_tilde * epsilon * epsilon / std::pow(2.0 * n, hp.k);
  hp.tau = ov.tau.value_or(hp.epsilon_tilde / 2.0);
  if (!(hp.tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (ov.theory_mode) {
    if (hp.tau >= hp.epsilon_tilde) {
      throw std::invalid_argument("theory mode requires tau < epsilon_tilde");
    }
    if (ov.queries) throw std::invalid_argument("theory mode does not accept a query override");
  }
  const double log_term =
      std::log(2.0 * M / delta) + static_cast<double>(hp.k) * std::log(3.0 * n);
  const double gap = hp.epsilon_tilde - hp.tau;
  hp.N_theory = gap > 0.0 ? 2.0 * (1.0 + hp.tau) * (1.0 + hp.tau) * log_term / (gap * gap)
                          : std::numeric_limits<double>::infinity();
  if (ov.queries) {
    hp.N = *ov.queries;
  } else {
    if (!std::isfinite(hp.N_theory)) {
      throw std::invalid_argument("tau >= epsilon_tilde: set the query count explicitly");
    }
    hp.N = std::max<std::uint64_t>(1, saturating_ceil(hp.N_theory));
  }
  return hp;
}

double corollary_query_count(const Hyperparams& hp, int n) {
  const double log_term =
      std::log(2.0 * hp.M / hp.delta) + static_cast<double>(hp.k) * std::log(3.0 * n);
  return std::ceil(2.0 * hp.tau * hp.tau * log_term / (hp.epsilon_tilde * hp.epsilon_tilde));
}

TrainingSet gather_data(Oracle& oracle, int n, std::uint64_t N, const Observable& o, double tau,
                        Rng& rng, bool exhaustive, int jobs, int exhaustive_cap) {
  require_qubits(n);
  if (o.num_qubits() != n || oracle.channel().num_qubits() != n) {
    throw std::invalid_argument("oracle/observable/qubit count mismatch");
  }
  if (exhaustive && n > exhaustive_cap) {
    throw std::length_error("exhaustive data needs 6^" + std::to_string(n) +
                            " states; cap is n <= " + std::to_string(exhaustive_cap));
  }
  const std::uint64_t master = rng();
  const std::uint64_t count = exhaustive ? pow6(n) : N;
  std::vector<std::optional<TrainingRecord>> slots(count);
  parallel_for(static_cast<std::int64_t>(count), jobs, [&](std::int64_t i) {
    const auto l = static_cast<std::uint64_t>(i);
    Rng r(derive_seed(master, Stream::kGather, l));
    auto s = exhaustive ? StabilizerProductState::from_index(n, l) : sample_stabilizer_product(n, r);
    const double y = oracle.query(density_of(s), o, tau, r);
    slots[l] = TrainingRecord{std::move(s), y};
  });
  TrainingSet out;
  out.exhaustive = exhaustive;
  out.records.reserve(count);
  for (auto& s : slots) out.records.push_back(std::move(*s));
  return out;
}

double Hypothesis::coefficient(const PauliString& p) const {
  for (const auto& e : entries) {
    if (e.pauli == p) return e.alpha;
  }
  return 0.0;
}

std::vector<double> estimate_raw(const TrainingSet& data, std::span<const PauliString> paulis,
                                 int jobs) {
  std::vector<StabilizerProductState> states;
  std::vector<double> y;
  states.reserve(data.records.size());
  y.reserve(data.records.size());
  for (const auto& r : data.records) {
    states.push_back(r.state);
    y.push_back(r.y);
  }
  if (jobs == 1) return pauli_correlations_serial(paulis, states, y);
  return pauli_correlations_parallel(paulis, states, y, jobs);
}

Hypothesis estimate_coefficients(const TrainingSet& data, const Observable& o, int k,
                                 double epsilon_tilde, int jobs) {
  const int n = o.num_qubits();
  Hypothesis h;
  h.observable = o.to_string();
  h.n = n;
  h.k = k;
  if (k < 0) throw std::invalid_argument("degree cap must be >= 0");
  const auto paulis = enumerate_low_degree(n, std::min(k, n));
  const auto x = estimate_raw(data, paulis, jobs);
  const double norm1 = o.pauli_1_norm();
  const double root = std::sqrt(epsilon_tilde);
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    const int d = paulis[i].degree();
    const double weight = std::pow(3.0, d);
    if (1.0 / weight <= 2.0 * epsilon_tilde) continue;
    if (std::abs(x[i]) <= 2.0 * std::sqrt(weight) * root * norm1) continue;
    const double alpha = weight * x[i];
    if (alpha != 0.0) h.entries.push_back({paulis[i], alpha});
  }
  return h;
}

double predict(const Hypothesis& h, const PauliExpectations& expectations) {
  NeumaierSum s;
  for (const auto& e : h.entries) {
    auto it = expectations.find(e.pauli);
    if (it == expectations.end()) {
      throw std::out_of_range("no expectation supplied for " + e.pauli.to_string());
    }
    s.add(e.alpha * it->second);
  }
  return s.value();
}

double predict(const Hypothesis& h, const DensityMatrix& rho) {
  NeumaierSum s;
  for (const auto& e : h.entries) s.add(e.alpha * pauli_expectation(e.pauli, rho));
  return s.value();
}

double predict(const Hypothesis& h, const StabilizerProductState& st) {
  NeumaierSum s;
  for (const auto& e : h.entries) {
    const int v = stab_expectation(e.pauli, st);
    if (v != 0) s.add(e.alpha * v);
  }
  return s.value();
}

double evaluate_rms(const Hypothesis& h, const Matrix& evolved, StateDistribution d,
                    std::uint64_t n_test, std::uint64_t seed, int jobs) {
  if (n_test < 1) throw std::invalid_argument("n_test must be >= 1");
  const int n = std::countr_zero(static_cast<std::uint64_t>(evolved.rows()));
  std::vector<double> sq(n_test);
  parallel_for(static_cast<std::int64_t>(n_test), jobs, [&](std::int64_t i) {
    Rng r(derive_seed(seed, Stream::kTest, static_cast<std::uint64_t>(i)));
    const auto sample = sample_state(d, n, r);
    const double err = predict(h, sample.rho) - expectation(evolved, sample.rho);
    sq[i] = err * err;
  });
  return std::sqrt(mean(sq));
}

double evaluate_rms(const Hypothesis& h, const Channel& c, const Observable& o,
                    StateDistribution d, std::uint64_t n_test, Rng& rng, int jobs) {
  return evaluate_rms(h, heisenberg_adjoint(c, o), d, n_test, rng(), jobs);
}

LearnResult learn(Oracle& oracle, std::span<const Observable> observables, double epsilon,
                  double delta, const HyperparamOverrides& overrides, Rng& rng, int jobs) {
  if (observables.empty()) throw std::invalid_argument("no observables to learn");
  const int n = oracle.channel().num_qubits();
  LearnResult out;
  out.hyperparams =
      derive_hyperparams(epsilon, n, delta, static_cast<int>(observables.size()), overrides);
  const auto& hp = out.hyperparams;
  const auto before = oracle.query_count();
  for (const auto& o : observables) {
    const auto data = gather_data(oracle, n, hp.N, o, hp.tau, rng, false, jobs);
    out.hypotheses.push_back(estimate_coefficients(data, o, hp.k, hp.epsilon_tilde, jobs));
  }
  out.queries_used = oracle.query_count() - before;
  return out;
}

}  // namespace qpsq
