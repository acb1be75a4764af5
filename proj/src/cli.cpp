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

#include "qpsq/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qpsq/experiments.hpp"
#include "qpsq/io.hpp"

namespace qpsq {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct Options {
  std::string config;
  std::uint64_t seed = 1;
  std::string out = "out";
  int n = 0;
  int jobs = 0;
};

using Runner = std::function<RunOutcome(const Json&, const RunContext&)>;

int execute(const std::string& name, const Options& opt, const Runner& run) {
  const auto start = std::chrono::steady_clock::now();
  const Json config = opt.config.empty() ? Json::object() : load_config(opt.config);
  const RunContext ctx{opt.seed, opt.jobs, opt.n};
  RunOutcome outcome = run(config, ctx);

  const std::filesystem::path dir(opt.out);
  for (const auto& [file, text] : outcome.files) write_file(dir / file, text);

  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(name + "\n" + config.dump() + "\n" +
                                                      std::to_string(opt.n))));
  Json verdicts = Json::object();
  for (const auto& [check, v] : outcome.verdicts) verdicts[check] = std::string(to_string(v));
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json summary = {{"subcommand", name},
                  {"config_hash", hash},
                  {"seed", opt.seed},
                  {"verdicts", verdicts},
                  {"wall_time", wall},
                  {"results", outcome.summary}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  if (!outcome.all_pass()) {
    std::cerr << name << ": not all verdicts passed\n";
    for (const auto& [check, v] : outcome.verdicts) {
      if (v != Verdict::Pass) std::cerr << "  " << check << ": " << to_string(v) << '\n';
    }
    return 1;
  }
  std::cout << name << ": " << outcome.verdicts.size() << " verdicts passed; wrote " << dir.string()
            << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Simulation lab for quantum statistical queries to quantum processes"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, std::pair<std::string, Runner>> commands = {
      {"oracle-compare", {"Gaussian vs classical-shadow oracle errors", run_oracle_compare}},
      {"learn", {"Learning-curve sweep over N and oracle noise", run_learning_curve}},
      {"protocol", {"Authentication pass rates: honest, attack, null", run_protocol_bench}},
      {"bounds", {"Monte Carlo checks of the concentration premises", run_bounds_suite}},
  };
  std::string chosen;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opt.config, "config file (.json or .toml)")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "master seed");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--n", opt.n, "qubit count override")->check(CLI::Range(1, 10));
    sub->add_option("--jobs", opt.jobs, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, name = name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return execute(chosen, opt, commands.at(chosen).second);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qpsq
