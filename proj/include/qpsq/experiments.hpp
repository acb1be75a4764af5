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
#include <string>
#include <utility>
#include <vector>

#include "qpsq/bounds.hpp"
#include "qpsq/io.hpp"

namespace qpsq {

struct RunContext {
  std::uint64_t seed = 1;
  int jobs = 0;
  /// Overrides the config's qubit count when set (> 0).
  int n = 0;
};

struct RunOutcome {
  /// file name -> contents
  std::map<std::string, std::string> files;
  std::vector<std::pair<std::string, Verdict>> verdicts;
  Json summary = Json::object();

  bool all_pass() const;
};

/**
 * Gaussian vs shadow errors for O = Z_1 on random product stabilizer inputs
 * through one fixed Haar unitary.
 * Config keys: n (1), queries (100000), tau (0.2), sigma (tau/2),
 * delta (0.0455), shots (Hoeffding count for tau, delta), exceedance_tol (0.005).
 * Writes oracle_compare.csv: query,state,truth,gaussian_error,shadow_error.
 */
RunOutcome run_oracle_compare(const Json& config, const RunContext& ctx);

/**
 * RMS prediction error over a (sigma, N) grid, averaged over channels.
 * Config keys: n (4), channels (5), channel ({"kind":"haar"}), observable (Z_1),
 * sigmas ([0.1, 0.025]), queries ([0, 1000, 5000, 20000]), distributions
 * (all three), n_test (2000), epsilon (0.5), delta (0.1), tau (0.2),
 * compare_queries (20000), slack (0.05).
 * Writes learning_curve.csv: n,distribution,sigma,N,rms.
 */
RunOutcome run_learning_curve(const Json& config, const RunContext& ctx);

/**
 * Honest / attack / null pass rates against attack budget.
 * Config keys: n (4), channel, observable (Z_1), tau (0.2), db_size (200),
 * distribution ("stabilizer"), oracle ({"mode":"gaussian"}), budgets
 * ([0, 1000, 5000, 20000]), rounds (200), attack_min_pass (2/3).
 * Writes protocol.csv with Wilson intervals per rate.
 */
RunOutcome run_protocol_bench(const Json& config, const RunContext& ctx);

/**
 * All bounds checks. Config sections: variance, concentration, spike,
 * mean_channel (see README for keys). Writes bounds.csv.
 */
RunOutcome run_bounds_suite(const Json& config, const RunContext& ctx);

/// Random observable with ||O||_1 = 1 made of up to `terms` non-identity
/// Pauli strings of degree <= max_degree.
Observable random_observable(int n, int terms, int max_degree, Rng& rng);

/// %.17g formatting used in every CSV.
std::string format_double(double x);

}  // namespace qpsq
