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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpsq/channel.hpp"
#include "qpsq/rng.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

struct ExactMode {};

/// truth + N(0, sigma^2). sigma defaults to tau / 2.
struct GaussianMode {
  std::optional<double> sigma;
  bool clamp = false;
};

/// Classical-shadow estimate from `shots` randomized Pauli measurements.
struct ShadowMode {
  std::uint64_t shots = 1000;
};

using OracleMode = std::variant<ExactMode, GaussianMode, ShadowMode>;

std::string mode_name(const OracleMode& m);

struct BudgetReport {
  std::uint64_t query_count = 0;
  /// tolerance -> number of queries made at that tolerance
  std::map<double, std::uint64_t> tolerance_histogram;
};

/**
 * Statistical query oracle over a fixed channel.
 *
 * Input states are passed by classical description (a density matrix).
 * query() is safe to call concurrently: the counter is atomic and the
 * histogram / Heisenberg-adjoint cache are mutex protected. Randomness
 * comes only from the caller's generator.
 */
class Oracle {
 public:
  Oracle(Channel channel, OracleMode mode, double default_tau = 0.2);
  ~Oracle();
  Oracle(Oracle&&) noexcept;
  Oracle& operator=(Oracle&&) noexcept;
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  double query(const DensityMatrix& rho, const Observable& o, double tau, Rng& rng);
  double query(const DensityMatrix& rho, const Observable& o, Rng& rng) {
    return query(rho, o, default_tau_, rng);
  }

  /// tr(O E(rho)) without touching the budget.
  double exact_value(const DensityMatrix& rho, const Observable& o) const;

  BudgetReport budget_report() const;
  std::uint64_t query_count() const;
  void reset();

  /// Same channel and mode, fresh budget.
  Oracle clone() const;

  const Channel& channel() const noexcept { return channel_; }
  const OracleMode& mode() const noexcept { return mode_; }
  double default_tau() const noexcept { return default_tau_; }

 private:
  struct Books;
  const Matrix& adjoint_for(const Observable& o) const;

  Channel channel_;
  OracleMode mode_;
  double default_tau_;
  std::unique_ptr<Books> books_;
};

// Shadow-mode building blocks, exposed for tests.

/// Measurement basis per qubit: 0 = X, 1 = Y, 2 = Z.
using BasisSetting = std::vector<int>;

/// Born-rule outcome distribution over 2^n outcomes when each qubit is
/// measured in its basis. Outcome bit for qubit 0 is the most significant.
std::vector<double> outcome_probabilities(const DensityMatrix& sigma, const BasisSetting& bases);

/// Eigenstate observed for basis setting and outcome index.
StabilizerProductState snapshot_state(const BasisSetting& bases, std::uint64_t outcome);

/// tr(O sigma_1) for the single-shot shadow built from snapshot s.
double single_shot_estimate(const Observable& o, const StabilizerProductState& s);

/// Average single-shot estimate over `shots` simulated measurements of sigma.
double shadow_estimate(const DensityMatrix& sigma, const Observable& o, std::uint64_t shots,
                       Rng& rng);

/// Hoeffding shot count so that a shadow estimate lands within tau of the
/// truth with probability >= 1 - delta. Per-shot range is
/// 2 sum_P |c_P| 3^{|P|}.
std::uint64_t shadow_shots_for(double tau, double delta, const Observable& o);

}  // namespace qpsq
