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

// Acceptance run: one PASS/FAIL line per criterion. Every tolerance, size
// and seed is pinned below. Exit status is 0 when every criterion passes or
// fails only where listed in kKnownRed; a known-red criterion still prints
// FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpsq/bounds.hpp"
#include "qpsq/cli.hpp"
#include "qpsq/ensembles.hpp"
#include "qpsq/experiments.hpp"
#include "qpsq/io.hpp"
#include "qpsq/learner.hpp"

namespace {

using namespace qpsq;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20260101;

// 1
constexpr int kC1Channels = 20;
constexpr double kC1Tol = 1e-10;
constexpr double kC1Seconds = 60;
// 2
constexpr double kC2Tau = 0.2;
constexpr double kC2Sigma = 0.1;
constexpr std::int64_t kC2Queries = 100000;
constexpr double kC2Target = 0.0455;
constexpr double kC2Tol = 0.005;
constexpr double kC2Seconds = 300;
// 3
constexpr int kC3Qubits = 4;
constexpr int kC3Channels = 5;
constexpr std::uint64_t kC3Queries = 20000;
constexpr double kC3Slack = 0.05;
constexpr double kC3Seconds = 1800;
// 4
constexpr std::uint64_t kC4Samples = 100000;
constexpr int kC4Pairs = 10;
constexpr double kC4Seconds = 600;
// 5
constexpr int kC5Qubits = 3;
constexpr double kC5Epsilon = 0.1;
constexpr int kC5States = 10;
constexpr double kC5Seconds = 60;
// 6
constexpr double kC6Tau = 0.5;
constexpr std::uint64_t kC6Samples = 100000;
constexpr double kC6Seconds = 600;
// 7
constexpr int kC7Qubits = 4;
constexpr double kC7Tau = 0.2;
constexpr std::uint64_t kC7Budget = 20000;
constexpr std::int64_t kC7Rounds = 200;
constexpr double kC7MinAttack = 2.0 / 3.0;
constexpr double kC7Seconds = 1200;

// Criteria analysed as unattainable in this setting; see the decisions log.
const std::set<std::string> kKnownRed = {"3b"};

struct Line {
  std::string id;
  bool pass = false;
  std::string text;
};

std::vector<Line> g_lines;

void report(const std::string& id, bool pass, const std::string& detail) {
  char head[32];
  std::snprintf(head, sizeof head, "criterion %-3s %s  ", id.c_str(), pass ? "PASS" : "FAIL");
  std::string text = head + detail + ((!pass && kKnownRed.count(id)) ? "  [known red]" : "");
  std::printf("%s\n", text.c_str());
  std::fflush(stdout);
  g_lines.push_back({id, pass, std::move(text)});
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict verdict(const RunOutcome& o, const std::string& key) {
  for (const auto& [k, v] : o.verdicts) {
    if (k == key) return v;
  }
  throw std::runtime_error("missing verdict " + key);
}

void criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  Rng rng(derive_seed(kSeed, Stream::kChannel, 1));
  for (int i = 0; i < kC1Channels; ++i) {
    const int n = 2 + i % 2;
    const auto kind = (i / 2) % 2 == 0 ? EnsembleKind::Haar : EnsembleKind::UniformClifford;
    const Channel c = Channel::unitary(sample_unitary(kind, n, rng));
    const Observable o = random_observable(n, 3, 2, rng);
    Oracle exact(c, ExactMode{});
    const auto data = gather_data(exact, n, 0, o, 0.1, rng, true);
    const auto paulis = enumerate_low_degree(n, 2);
    const auto x = estimate_raw(data, paulis, 0);
    const Matrix adj = heisenberg_adjoint(c, o);
    for (std::size_t j = 0; j < paulis.size(); ++j) {
      const double want = pauli_coefficient(adj, paulis[j]) / std::pow(3.0, paulis[j].degree());
      worst = std::max(worst, std::abs(x[j] - want));
    }
  }
  const double secs = seconds_since(t0);
  report("1", worst <= kC1Tol && secs < kC1Seconds,
         fmt("exhaustive learner vs exact alpha/3^|P|: max err %.3g", worst) +
             fmt(" (tol 1e-10), %.1fs", secs));
}

void criterion2() {
  const auto t0 = Clock::now();
  const Json cfg = {{"n", 1},          {"queries", kC2Queries},   {"tau", kC2Tau},
                    {"sigma", kC2Sigma}, {"delta", kC2Target}, {"exceedance_tol", kC2Tol}};
  const auto out = run_oracle_compare(cfg, {kSeed, 0, 0});
  const double g = out.summary.at("gaussian_exceedance").get<double>();
  const double s = out.summary.at("shadow_exceedance").get<double>();
  const double secs = seconds_since(t0);
  const bool pass = std::abs(g - kC2Target) <= kC2Tol && s <= g && secs < kC2Seconds;
  report("2", pass,
         fmt("gaussian exceedance %.5f", g) + fmt(" (target 0.0455 +- 0.005), shadow %.5f", s) +
             fmt(", %.1fs", secs));
}

void criterion3() {
  const auto t0 = Clock::now();
  const Json cfg = {{"n", kC3Qubits},
                    {"channels", kC3Channels},
                    {"sigmas", {0.1, 0.025}},
                    {"queries", {0, 1000, 5000, kC3Queries}},
                    {"compare_queries", kC3Queries},
                    {"slack", kC3Slack}};
  const auto out = run_learning_curve(cfg, {kSeed, 0, 0});
  const double secs = seconds_since(t0);
  bool improves = true;
  std::string detail = "sigma 0.1 -> 0.025 at N=2e4:";
  for (const std::string d : {"computational", "stabilizer", "haar"}) {
    improves = improves && verdict(out, "sigma_improves_" + d) == Verdict::Pass;
    const auto& r = out.summary.at("distributions").at(d);
    detail += " " + d + fmt(" %.4f", r.at("rms_high_sigma").get<double>()) +
              fmt("->%.4f", r.at("rms_low_sigma").get<double>());
  }
  report("3a", improves && secs < kC3Seconds, detail + fmt(", %.1fs", secs));
  const bool lowest = verdict(out, "haar_lowest_at_max_N_sigma_0.1") == Verdict::Pass &&
                      verdict(out, "haar_lowest_at_max_N_sigma_0.025") == Verdict::Pass;
  const auto& ds = out.summary.at("distributions");
  report("3b", lowest,
         "haar lowest RMS at max N: haar" +
             fmt(" %.4f", ds.at("haar").at("rms_low_sigma").get<double>()) + " vs computational" +
             fmt(" %.4f", ds.at("computational").at("rms_low_sigma").get<double>()) +
             " vs stabilizer" +
             fmt(" %.4f", ds.at("stabilizer").at("rms_low_sigma").get<double>()));
}

Json bounds_only(const std::string& keep) {
  Json cfg = {{"variance", {{"enabled", false}}},
              {"concentration", {{"enabled", false}}},
              {"spike", {{"enabled", false}}},
              {"mean_channel", {{"enabled", false}}}};
  cfg[keep]["enabled"] = true;
  return cfg;
}

std::pair<bool, double> worst_margin(const RunOutcome& out, const std::string& check) {
  const std::string csv = out.files.at("bounds.csv");
  bool all = true;
  int rows = 0;
  double worst = -1e300;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.rfind(check + ",", 0) != 0) continue;
    ++rows;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    all = all && f.back() == "pass";
    worst = std::max(worst, std::stod(f[2]) - std::stod(f[4]));
  }
  return {all && rows > 0, worst};
}

void criterion4() {
  const auto t0 = Clock::now();
  Json cfg = bounds_only("variance");
  cfg["variance"].update({{"ensembles", {"clifford"}},
                          {"ns", {1, 2, 3, 4}},
                          {"pairs", kC4Pairs},
                          {"samples", kC4Samples}});
  const auto out = run_bounds_suite(cfg, {kSeed, 0, 0});
  const auto [ok, margin] = worst_margin(out, "variance");
  const double secs = seconds_since(t0);
  report("4", ok && secs < kC4Seconds,
         fmt("40 clifford (rho, O) pairs, max(variance - 1/(2^n+1)) = %.4g", margin) +
             fmt(" within 3 CI, %.1fs", secs));
}

void criterion5() {
  const auto t0 = Clock::now();
  Json cfg = bounds_only("spike");
  cfg["spike"].update({{"n", kC5Qubits}, {"epsilon", kC5Epsilon}, {"max_degree", 2},
                       {"states", kC5States}});
  const auto out = run_bounds_suite(cfg, {kSeed, 0, 0});
  const auto [sp, e1] = worst_margin(out, "spike");
  const auto [dp, e2] = worst_margin(out, "depolarizing");
  const double secs = seconds_since(t0);
  report("5", sp && dp && secs < kC5Seconds,
         fmt("spike max err %.3g", e1 + 1e-10) + fmt(", depolarizing max err %.3g", e2 + 1e-10) +
             fmt(" (tol 1e-10), %.2fs", secs));
}

void criterion6() {
  const auto t0 = Clock::now();
  Json cfg = bounds_only("concentration");
  cfg["concentration"].update({{"ns", {1, 2, 3, 4}}, {"tau", kC6Tau}, {"samples", kC6Samples}});
  const auto out = run_bounds_suite(cfg, {kSeed, 0, 0});
  const bool bound = verdict(out, "concentration") == Verdict::Pass;
  const bool mono = verdict(out, "monotone") == Verdict::Pass;
  const double secs = seconds_since(t0);
  std::string rates;
  std::istringstream is(out.files.at("bounds.csv"));
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("concentration,", 0) == 0) {
      const auto a = line.find(',', line.find(',') + 1);
      rates += " " + line.substr(a + 1, line.find(',', a + 1) - a - 1);
    }
  }
  report("6", bound && mono && secs < kC6Seconds,
         "exceedance n=1..4:" + rates + (mono ? " monotone" : " NOT monotone") +
             (bound ? ", under 2exp(-2^n/192)" : ", bound violated") + fmt(", %.1fs", secs));
}

void criterion7() {
  const auto t0 = Clock::now();
  const Json cfg = {{"n", kC7Qubits},
                    {"channel", {{"kind", "haar"}}},
                    {"tau", kC7Tau},
                    {"distribution", "stabilizer"},
                    {"oracle", {{"mode", "gaussian"}}},
                    {"budgets", {kC7Budget}},
                    {"rounds", kC7Rounds},
                    {"attack_min_pass", kC7MinAttack}};
  const auto out = run_protocol_bench(cfg, {kSeed, 0, 0});
  const double attack = out.summary.at("attack_pass_rates").back().get<double>();
  const double honest = out.summary.at("honest_exact_pass_rate").get<double>();
  const double secs = seconds_since(t0);
  report("7", honest == 1.0 && attack >= kC7MinAttack && secs < kC7Seconds,
         fmt("honest (exact) %.3f", honest) + fmt(", attack at 2e4 queries %.3f", attack) +
             fmt(" (min 2/3), %.1fs", secs));
}

int run_tool(const std::vector<std::string>& args) {
  std::vector<std::string> a = {"qpsq"};
  a.insert(a.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : a) argv.push_back(s.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

void criterion8(const fs::path& root) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"oracle-compare", "oracle_compare.csv"},
      {"learn", "learning_curve.csv"},
      {"protocol", "protocol.csv"},
      {"bounds", "bounds.csv"}};
  bool same = true;
  std::string detail;
  for (const auto& [cmd, csv] : cmds) {
    const auto a = root / (cmd + "_run1"), b = root / (cmd + "_run2");
    run_tool({cmd, "--seed", "8", "--jobs", "1", "--out", a.string()});
    run_tool({cmd, "--seed", "8", "--jobs", "4", "--out", b.string()});
    bool eq = false;
    try {
      eq = read_file(a / csv) == read_file(b / csv);
    } catch (const std::exception&) {
      eq = false;
    }
    same = same && eq;
    detail += " " + cmd + (eq ? "=" : "!=");
  }
  report("8", same, "byte-identical CSVs (jobs 1 vs 4):" + detail + fmt(", %.1fs", seconds_since(t0)));
}

}  // namespace

int main(int argc, char** argv) {
  fs::path root = "acceptance_out";
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out" && i + 1 < argc) root = argv[++i];
    else if (a == "--only" && i + 1 < argc) only.insert(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--out DIR] [--only N]...\n");
      return 2;
    }
  }
  fs::create_directories(root);
  const std::vector<std::pair<std::string, std::function<void()>>> all = {
      {"1", criterion1}, {"2", criterion2}, {"3", criterion3}, {"4", criterion4},
      {"5", criterion5}, {"6", criterion6}, {"7", criterion7},
      {"8", [&] { criterion8(root); }}};
  for (const auto& [id, fn] : all) {
    if (!only.empty() && !only.count(id)) continue;
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  int unexpected = 0;
  for (const auto& l : g_lines) {
    if (!l.pass && !kKnownRed.count(l.id)) ++unexpected;
  }
  std::printf("%zu lines, %d unexpected failures\n", g_lines.size(), unexpected);
  std::ofstream log(root / "acceptance.txt");
  for (const auto& l : g_lines) log << l.text << '\n';
  return unexpected == 0 ? 0 : 1;
}
