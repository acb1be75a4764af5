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

#include <filesystem>
#include <string>
#include <utility>

#include <json.hpp>

#include "qpsq/channel.hpp"
#include "qpsq/learner.hpp"
#include "qpsq/oracle.hpp"
#include "qpsq/pauli.hpp"
#include "qpsq/rng.hpp"
#include "qpsq/state.hpp"

namespace qpsq {

using Json = nlohmann::json;

/// [{"coeff": c, "pauli": "ZII"}, ...]
Json to_json(const Observable& o);
Observable observable_from_json(const Json& j);

/// {"observable": id, "k": k, "entries": [{"pauli": "ZI", "alpha": a}, ...]}
Json to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const Json& j);

/// Row-major array of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json to_json(const DensityMatrix& rho);

/// "state_label,y" rows with a header line.
std::string training_set_to_csv(const TrainingSet& t);
TrainingSet training_set_from_csv(const std::string& text);

/**
 * Channel spec:
 *   {"kind": "haar" | "clifford" | "identity" | "depolarizing"
 *            | "spike" | "file", ...}
 * "spike" takes "epsilon" and "pauli"; "file" takes "path" to a JSON matrix.
 * Unitary kinds accept "noise" (depolarizing strength, default 0).
 */
Channel channel_from_json(const Json& j, int n, Rng& rng);

/// {"mode": "exact" | "gaussian" | "shadow", "sigma", "clamp", "shots", "tau"}
/// Returns the mode and the default tolerance (0.2 when absent).
std::pair<OracleMode, double> oracle_from_json(const Json& j);

/// Parses a config file: JSON, or TOML when the extension is .toml
/// (converted to the same JSON tree).
Json load_config(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qpsq
