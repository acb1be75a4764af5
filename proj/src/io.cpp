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

#include "qpsq/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <toml.hpp>

#include "qpsq/ensembles.hpp"

namespace qpsq {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Json to_json(const Observable& o) {
  Json arr = Json::array();
  for (const auto& t : o.terms()) arr.push_back({{"coeff", t.coeff}, {"pauli", t.pauli.to_string()}});
  return arr;
}

Observable observable_from_json(const Json& j) {
  if (j.is_string()) return Observable::parse_pauli(j.get<std::string>());
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("observable must be a non-empty array of {coeff, pauli}");
  }
  std::vector<PauliTerm> terms;
  for (const auto& t : j) {
    if (!t.contains("pauli")) throw std::invalid_argument("observable term missing \"pauli\"");
    terms.push_back({t.value("coeff", 1.0), PauliString::parse(t.at("pauli").get<std::string>())});
  }
  const int n = terms.front().pauli.num_qubits();
  return Observable(n, std::move(terms));
}

Json to_json(const Hypothesis& h) {
  Json entries = Json::array();
  for (const auto& e : h.entries) entries.push_back({{"pauli", e.pauli.to_string()}, {"alpha", e.alpha}});
  return {{"observable", h.observable}, {"n", h.n}, {"k", h.k}, {"entries", entries}};
}

Hypothesis hypothesis_from_json(const Json& j) {
  Hypothesis h;
  h.observable = j.at("observable").get<std::string>();
  h.k = j.at("k").get<int>();
  h.n = j.value("n", 0);
  for (const auto& e : j.at("entries")) {
    auto p = PauliString::parse(e.at("pauli").get<std::string>());
    if (p.degree() > h.k) throw std::invalid_argument("hypothesis entry exceeds degree cap");
    if (h.n == 0) h.n = p.num_qubits();
    h.entries.push_back({std::move(p), e.at("alpha").get<double>()});
  }
  return h;
}

Json matrix_to_json(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return arr;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of [re, im] pairs");
  const auto count = static_cast<Eigen::Index>(j.size());
  auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (side * side != count || side == 0) throw std::invalid_argument("matrix entry count is not a square");
  Matrix m(side, side);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& e = j[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix entry must be [re, im]");
    m(i / side, i % side) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json to_json(const DensityMatrix& rho) {
  return {{"n", rho.num_qubits()}, {"entries", matrix_to_json(rho.matrix())}};
}

std::string training_set_to_csv(const TrainingSet& t) {
  std::ostringstream os;
  os.precision(17);
  os << "state_label,y\n";
  for (const auto& r : t.records) os << r.state.to_string() << ',' << r.y << '\n';
  return os.str();
}

TrainingSet training_set_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  TrainingSet t;
  bool header = true;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "state_label,y") continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad training row: " + line);
    t.records.push_back({StabilizerProductState::parse(trim(line.substr(0, comma))),
                         std::stod(line.substr(comma + 1))});
  }
  return t;
}

Channel channel_from_json(const Json& j, int n, Rng& rng) {
  const std::string kind = j.value("kind", std::string("haar"));
  const double noise = j.value("noise", 0.0);
  auto wrap = [&](Matrix u) {
    return noise > 0.0 ? Channel::noisy_unitary(std::move(u), noise) : Channel::unitary(std::move(u));
  };
  if (kind == "haar") return wrap(haar_unitary(n, rng));
  if (kind == "clifford" || kind == "uniform-clifford") return wrap(uniform_clifford(n, rng));
  if (kind == "identity") return noise > 0.0 ? wrap(Matrix::Identity(1LL << n, 1LL << n)) : Channel::identity(n);
  if (kind == "depolarizing") return Channel::depolarizing(n);
  if (kind == "spike") {
    if (!j.contains("epsilon") || !j.contains("pauli")) {
      throw std::invalid_argument("spike channel needs \"epsilon\" and \"pauli\"");
    }
    return Channel::pauli_spike(j.at("epsilon").get<double>(), PauliString::parse(j.at("pauli").get<std::string>()));
  }
  if (kind == "file") {
    if (!j.contains("path")) throw std::invalid_argument("file channel needs \"path\"");
    Matrix u = matrix_from_json(Json::parse(read_file(j.at("path").get<std::string>())));
    if (u.rows() != (1LL << n)) throw std::invalid_argument("file unitary does not match n");
    return wrap(std::move(u));
  }
  throw std::invalid_argument("unknown channel kind \"" + kind + "\"");
}

std::pair<OracleMode, double> oracle_from_json(const Json& j) {
  const std::string mode = j.value("mode", std::string("exact"));
  const double tau = j.value("tau", 0.2);
  if (!(tau > 0.0)) throw std::invalid_argument("oracle.tau must be > 0");
  if (mode == "exact") return {ExactMode{}, tau};
  if (mode == "gaussian") {
    GaussianMode g;
    if (j.contains("sigma") && !j.at("sigma").is_null()) g.sigma = j.at("sigma").get<double>();
    g.clamp = j.value("clamp", false);
    if (g.sigma && !(*g.sigma > 0.0)) throw std::invalid_argument("oracle.sigma must be > 0");
    return {g, tau};
  }
  if (mode == "shadow") {
    const auto shots = j.value("shots", std::int64_t{1000});
    if (shots < 1) throw std::invalid_argument("oracle.shots must be >= 1");
    return {ShadowMode{static_cast<std::uint64_t>(shots)}, tau};
  }
  throw std::invalid_argument("oracle.mode must be exact, gaussian or shadow (got \"" + mode + "\")");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Json load_config(const std::filesystem::path& path) {
  if (path.extension() == ".toml") {
    try {
      const toml::table t = toml::parse(read_file(path), path.string());
      std::ostringstream os;
      os << toml::json_formatter{t};
      return Json::parse(os.str());
    } catch (const toml::parse_error& e) {
      throw std::invalid_argument("config " + path.string() + ": " + std::string(e.description()));
    }
  }
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
}

}  // namespace qpsq
