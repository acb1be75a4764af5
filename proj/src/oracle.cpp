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

#include "qpsq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "qpsq/stats.hpp"

namespace qpsq {

namespace {

constexpr double kNormSlack = 1e-9;

Eigen::Matrix2cd basis_rotation(int basis) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd v;
  switch (basis) {
    case 0:  // H
      v << r, r, r, -r;
      break;
    case 1:  // H S^dagger
      v << cplx(r, 0), cplx(0, -r), cplx(r, 0), cplx(0, r);
      break;
    default:
      v.setIdentity();
  }
  return v;
}

void check_mode(const OracleMode& m) {
  if (const auto* g = std::get_if<GaussianMode>(&m)) {
    if (g->sigma && !(*g->sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  }
  if (const auto* s = std::get_if<ShadowMode>(&m)) {
    if (s->shots < 1) throw std::invalid_argument("shots must be >= 1");
  }
}

}  // namespace

std::string mode_name(const OracleMode& m) {
  switch (m.index()) {
    case 0: return "exact";
    case 1: return "gaussian";
    default: return "shadow";
  }
}

struct Oracle::Books {
  std::atomic<std::uint64_t> count{0};
  mutable std::mutex mu;
  std::map<double, std::uint64_t> histogram;
  mutable std::mutex cache_mu;
  mutable std::unordered_map<std::string, std::unique_ptr<Matrix>> adjoints;
};

Oracle::Oracle(Channel channel, OracleMode mode, double default_tau)
    : channel_(std::move(channel)),
      mode_(std::move(mode)),
      default_tau_(default_tau),
      books_(std::make_unique<Books>()) {
  if (!(default_tau > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  check_mode(mode_);
}

Oracle::~Oracle() = default;
Oracle::Oracle(Oracle&&) noexcept = default;
Oracle& Oracle::operator=(Oracle&&) noexcept = default;

const Matrix& Oracle::adjoint_for(const Observable& o) const {
  if (o.num_qubits() != channel_.num_qubits()) {
    throw std::invalid_argument("observable acts on " + std::to_string(o.num_qubits()) +
                                " qubits, channel on " +
                                std::to_string(channel_.num_qubits()));
  }
  const std::string key = o.to_string();
  std::lock_guard lock(books_->cache_mu);
  auto it = books_->adjoints.find(key);
  if (it != books_->adjoints.end()) return *it->second;
  // Lazy operator-norm validation, once per observable.
  if (o.pauli_1_norm() > 1.0 + kNormSlack && o.operator_norm() > 1.0 + kNormSlack) {
    throw std::invalid_argument("observable operator norm exceeds 1");
  }
  auto m = std::make_unique<Matrix>(heisenberg_adjoint(channel_, o));
  const Matrix& ref = *m;
  books_->adjoints.emplace(key, std::move(m));
  return ref;
}

double Oracle::exact_value(const DensityMatrix& rho, const Observable& o) const {
  if (rho.num_qubits() != channel_.num_qubits()) {
    throw std::invalid_argument("state/channel qubit count mismatch");
  }
  return expectation(adjoint_for(o), rho);
}

double Oracle::query(const DensityMatrix& rho, const Observable& o, double tau, Rng& rng) {
  if (!(tau > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const double truth = exact_value(rho, o);
  double out = truth;
  if (const auto* g = std::get_if<GaussianMode>(&mode_)) {
    const double sigma = g->sigma.value_or(tau / 2.0);
    std::normal_distribution<double> noise(0.0, sigma);
    out = truth + noise(rng);
    if (g->clamp) out = std::clamp(out, truth - tau, truth + tau);
  } else if (const auto* s = std::get_if<ShadowMode>(&mode_)) {
    out = shadow_estimate(apply(channel_, rho), o, s->shots, rng);
  }
  books_->count.fetch_add(1, std::memory_order_relaxed);
  {
    std::lock_guard lock(books_->mu);
    ++books_->histogram[tau];
  }
  return out;
}

BudgetReport Oracle::budget_report() const {
  BudgetReport r;
  r.query_count = books_->count.load();
  std::lock_guard lock(books_->mu);
  r.tolerance_histogram = books_->histogram;
  return r;
}

std::uint64_t Oracle::query_count() const { return books_->count.load(); }

void Oracle::reset() {
  books_->count.store(0);
  std::lock_guard lock(books_->mu);
  books_->histogram.clear();
}

Oracle Oracle::clone() const { return Oracle(channel_, mode_, default_tau_); }

// ---------------------------------------------------------------------------

std::vector<double> outcome_probabilities(const DensityMatrix& sigma, const BasisSetting& bases) {
  const int n = sigma.num_qubits();
  if (static_cast<int>(bases.size()) != n) throw std::invalid_argument("basis setting size");
  Matrix v = Matrix::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2cd r = basis_rotation(bases[q]);
    Matrix next(v.rows() * 2, v.cols() * 2);
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = v(i, j) * r;
      }
    }
    v = std::move(next);
  }
  const Matrix rotated = v * sigma.matrix() * v.adjoint();
  std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
  for (Eigen::Index i = 0; i < rotated.rows(); ++i) p[i] = std::max(0.0, rotated(i, i).real());
  return p;
}

StabilizerProductState snapshot_state(const BasisSetting& bases, std::uint64_t outcome) {
  const int n = static_cast<int>(bases.size());
  std::vector<StabLabel> labels(bases.size());
  for (int q = 0; q < n; ++q) {
    const bool one = (outcome >> (n - 1 - q)) & 1ULL;
    switch (bases[q]) {
      case 0: labels[q] = one ? StabLabel::Minus : StabLabel::Plus; break;
      case 1: labels[q] = one ? StabLabel::MinusY : StabLabel::PlusY; break;
      default: labels[q] = one ? StabLabel::One : StabLabel::Zero; break;
    }
  }
  return StabilizerProductState(std::move(labels));
}

double single_shot_estimate(const Observable& o, const StabilizerProductState& s) {
  // tr(P_q (3|s><s| - I)) = 3 <s|P_q|s> for P_q != I and 1 for P_q = I.
  double acc = 0.0;
  for (const auto& t : o.terms()) {
    const int e = stab_expectation(t.pauli, s);
    if (e != 0) acc += t.coeff * e * std::pow(3.0, t.pauli.degree());
  }
  return acc;
}

double shadow_estimate(const DensityMatrix& sigma, const Observable& o, std::uint64_t shots,
                       Rng& rng) {
  const int n = sigma.num_qubits();
  if (o.num_qubits() != n) throw std::invalid_argument("observable/state size mismatch");
  std::uniform_int_distribution<int> pick_basis(0, 2);
  // Per-setting outcome samplers, built on first use.
  std::unordered_map<std::uint64_t, std::discrete_distribution<std::uint64_t>> samplers;
  BasisSetting bases(static_cast<std::size_t>(n));
  NeumaierSum sum;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::uint64_t key = 0;
    for (int q = 0; q < n; ++q) {
      bases[q] = pick_basis(rng);
      key = key * 3 + static_cast<std::uint64_t>(bases[q]);
    }
    auto it = samplers.find(key);
    if (it == samplers.end()) {
      const auto p = outcome_probabilities(sigma, bases);
      it = samplers.emplace(key, std::discrete_distribution<std::uint64_t>(p.begin(), p.end()))
               .first;
    }
    sum.add(single_shot_estimate(o, snapshot_state(bases, it->second(rng))));
  }
  return sum.value() / static_cast<double>(shots);
}

std::uint64_t shadow_shots_for(double tau, double delta, const Observable& o) {
  if (!(tau > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("need tau > 0 and delta in (0, 1)");
  }
  double bound = 0.0;
  for (const auto& t : o.terms()) bound += std::abs(t.coeff) * std::pow(3.0, t.pauli.degree());
  const double range = 2.0 * bound;
  return static_cast<std::uint64_t>(
      std::ceil(range * range * std::log(2.0 / delta) / (2.0 * tau * tau)));
}

}  // namespace qpsq
