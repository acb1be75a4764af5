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

#include "qpsq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qpsq/crqpuf.hpp"
#include "qpsq/ensembles.hpp"
#include "qpsq/kernels.hpp"
#include "qpsq/learner.hpp"
#include "qpsq/stats.hpp"

namespace qpsq {

namespace {

template <class T>
T field(const Json& c, const char* key, T fallback) {
  if (!c.contains(key) || c.at(key).is_null()) return fallback;
  try {
    return c.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("config field \"") + key + "\": " + e.what());
  }
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string("config field \"") + key + "\": " + what);
}

int qubits(const Json& c, const RunContext& ctx, int fallback) {
  const int n = ctx.n > 0 ? ctx.n : field(c, "n", fallback);
  require(n >= 1 && n <= kDefaultDenseCap, "n", "must lie in [1, 10]");
  return n;
}

Observable observable_or_z1(const Json& c, int n) {
  if (!c.contains("observable")) return Observable::from_pauli(PauliString::single(n, 0, Pauli::Z));
  Observable o = observable_from_json(c.at("observable"));
  require(o.num_qubits() == n, "observable", "qubit count differs from n");
  return o;
}

double trace_product(const Matrix& a, const Matrix& rho) {
  return (a.cwiseProduct(rho.transpose())).sum().real();
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  s += '\n';
  return s;
}

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool RunOutcome::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const auto& v) { return v.second == Verdict::Pass; });
}

Observable random_observable(int n, int terms, int max_degree, Rng& rng) {
  max_degree = std::clamp(max_degree, 1, n);
  const auto pool = enumerate_low_degree(n, max_degree);
  std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<PauliTerm> chosen;
  while (static_cast<int>(chosen.size()) < std::min<int>(terms, static_cast<int>(pool.size()) - 1)) {
    const auto& p = pool[pick(rng)];
    const bool dup = std::any_of(chosen.begin(), chosen.end(), [&](const PauliTerm& t) { return t.pauli == p; });
    if (!dup) chosen.push_back({coeff(rng), p});
  }
  double norm = 0.0;
  for (const auto& t : chosen) norm += std::abs(t.coeff);
  for (auto& t : chosen) t.coeff /= norm;
  return Observable(n, std::move(chosen));
}

// ---------------------------------------------------------------------------

RunOutcome run_oracle_compare(const Json& c, const RunContext& ctx) {
  const int n = qubits(c, ctx, 1);
  const auto queries = field<std::int64_t>(c, "queries", 100000);
  const double tau = field(c, "tau", 0.2);
  const double sigma = field(c, "sigma", tau / 2.0);
  const double delta = field(c, "delta", 0.0455);
  const double tol = field(c, "exceedance_tol", 0.005);
  require(queries >= 1, "queries", "must be >= 1");
  require(tau > 0.0, "tau", "must be > 0");
  require(sigma > 0.0, "sigma", "must be > 0");
  require(delta > 0.0 && delta < 1.0, "delta", "must lie in (0, 1)");
  const Observable obs = observable_or_z1(c, n);
  const auto shots = field<std::uint64_t>(c, "shots", shadow_shots_for(tau, delta, obs));
  require(shots >= 1, "shots", "must be >= 1");

  Rng chan_rng(derive_seed(ctx.seed, Stream::kChannel));
  const Channel channel = Channel::unitary(haar_unitary(n, chan_rng));
  Oracle gauss(channel, GaussianMode{sigma, false}, tau);
  Oracle shadow(channel, ShadowMode{shots}, tau);

  struct Row {
    std::string state;
    double truth = 0.0, g = 0.0, s = 0.0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(queries));
  parallel_for(queries, ctx.jobs, [&](std::int64_t i) {
    const auto idx = static_cast<std::uint64_t>(i);
    Rng state_rng(derive_seed(ctx.seed, Stream::kStates, idx));
    const auto s = sample_stabilizer_product(n, state_rng);
    const DensityMatrix rho = density_of(s);
    Rng g_rng(derive_seed(ctx.seed, Stream::kSamples, 2 * idx));
    Rng s_rng(derive_seed(ctx.seed, Stream::kSamples, 2 * idx + 1));
    Row& r = rows[idx];
    r.state = s.to_string();
    r.truth = gauss.exact_value(rho, obs);
    r.g = gauss.query(rho, obs, tau, g_rng) - r.truth;
    r.s = shadow.query(rho, obs, tau, s_rng) - r.truth;
  });

  std::string csv = "query,state,truth,gaussian_error,shadow_error\n";
  std::uint64_t g_out = 0, s_out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv += csv_row({std::to_string(i), r.state, format_double(r.truth), format_double(r.g),
                    format_double(r.s)});
    g_out += std::abs(r.g) > tau;
    s_out += std::abs(r.s) > tau;
  }
  const double q = static_cast<double>(queries);
  const double g_frac = static_cast<double>(g_out) / q;
  const double s_frac = static_cast<double>(s_out) / q;
  const double expected = std::erfc(tau / (sigma * std::sqrt(2.0)));

  RunOutcome out;
  out.files["oracle_compare.csv"] = csv;
  out.verdicts.push_back({"gaussian_exceedance", verdict_of(std::abs(g_frac - expected) <= tol)});
  out.verdicts.push_back({"shadow_not_worse", verdict_of(s_frac <= g_frac)});
  out.summary = {{"queries", queries},          {"tau", tau},
                 {"sigma", sigma},              {"delta", delta},
                 {"shots", shots},              {"expected_exceedance", expected},
                 {"gaussian_exceedance", g_frac}, {"shadow_exceedance", s_frac}};
  return out;
}

// ---------------------------------------------------------------------------

RunOutcome run_learning_curve(const Json& c, const RunContext& ctx) {
  const int n = qubits(c, ctx, 4);
  const int channels = field(c, "channels", 5);
  const Json spec = field(c, "channel", Json{{"kind", "haar"}});
  const Observable obs = observable_or_z1(c, n);
  const auto sigmas = field(c, "sigmas", std::vector<double>{0.1, 0.025});
  auto budgets = field(c, "queries", std::vector<std::uint64_t>{0, 1000, 5000, 20000});
  const auto dist_names =
      field(c, "distributions", std::vector<std::string>{"computational", "stabilizer", "haar"});
  const auto n_test = field<std::uint64_t>(c, "n_test", 2000);
  const double epsilon = field(c, "epsilon", 0.5);
  const double delta = field(c, "delta", 0.1);
  const double tau = field(c, "tau", 0.2);
  const auto compare_n = field<std::uint64_t>(c, "compare_queries", 20000);
  const double slack = field(c, "slack", 0.05);
  require(channels >= 1, "channels", "must be >= 1");
  require(!sigmas.empty(), "sigmas", "must be non-empty");
  for (double s : sigmas) require(s > 0.0, "sigmas", "entries must be > 0");
  require(!budgets.empty(), "queries", "must be non-empty");
  require(n_test >= 1, "n_test", "must be >= 1");
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  std::vector<StateDistribution> dists;
  for (const auto& d : dist_names) dists.push_back(parse_distribution(d));

  HyperparamOverrides ov;
  ov.tau = tau;
  ov.queries = budgets.back();
  const Hyperparams hp = derive_hyperparams(epsilon, n, delta, 1, ov);
  const auto paulis = enumerate_low_degree(n, hp.k_effective);
  std::unordered_map<PauliString, std::size_t, PauliHash> slot;
  for (std::size_t j = 0; j < paulis.size(); ++j) slot.emplace(paulis[j], j);

  // Test states are shared by every channel, sigma and N.
  std::vector<std::vector<Matrix>> test_states(dists.size());
  std::vector<Eigen::MatrixXd> pauli_table(dists.size());
  for (std::size_t di = 0; di < dists.size(); ++di) {
    const std::uint64_t base = derive_seed(ctx.seed, Stream::kTest, di);
    auto& states = test_states[di];
    states.resize(n_test);
    pauli_table[di].resize(static_cast<Eigen::Index>(n_test), static_cast<Eigen::Index>(paulis.size()));
    parallel_for(static_cast<std::int64_t>(n_test), ctx.jobs, [&](std::int64_t t) {
      Rng r(derive_seed(base, Stream::kTest, static_cast<std::uint64_t>(t)));
      states[t] = sample_state(dists[di], n, r).rho.matrix();
      for (std::size_t j = 0; j < paulis.size(); ++j) {
        pauli_table[di](t, static_cast<Eigen::Index>(j)) = trace_with_pauli(paulis[j], states[t]).real();
      }
    });
  }

  // rms[di][si][bi], averaged over channels
  std::vector<std::vector<std::vector<double>>> rms(
      dists.size(), std::vector<std::vector<double>>(sigmas.size(), std::vector<double>(budgets.size(), 0.0)));
  std::vector<double> baseline(dists.size(), 0.0);
  Json hypothesis_json;

  for (int ci = 0; ci < channels; ++ci) {
    Rng chan_rng(derive_seed(ctx.seed, Stream::kChannel, static_cast<std::uint64_t>(ci)));
    const Channel channel = channel_from_json(spec, n, chan_rng);
    const Matrix evolved = heisenberg_adjoint(channel, obs);
    std::vector<Eigen::VectorXd> truths(dists.size());
    for (std::size_t di = 0; di < dists.size(); ++di) {
      truths[di].resize(static_cast<Eigen::Index>(n_test));
      for (std::uint64_t t = 0; t < n_test; ++t) truths[di](t) = trace_product(evolved, test_states[di][t]);
      baseline[di] += std::sqrt(truths[di].squaredNorm() / static_cast<double>(n_test)) / channels;
    }
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
      Oracle oracle(channel, GaussianMode{sigmas[si], false}, tau);
      // Same generator for every sigma: identical states and unit noise draws.
      Rng gather_rng(derive_seed(ctx.seed, Stream::kGather, static_cast<std::uint64_t>(ci)));
      const TrainingSet data = gather_data(oracle, n, budgets.back(), obs, tau, gather_rng, false, ctx.jobs);
      for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        TrainingSet prefix;
        prefix.records.assign(data.records.begin(),
                              data.records.begin() + static_cast<std::ptrdiff_t>(budgets[bi]));
        const Hypothesis h = estimate_coefficients(prefix, obs, hp.k, hp.epsilon_tilde, ctx.jobs);
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(paulis.size()));
        for (const auto& e : h.entries) alpha(static_cast<Eigen::Index>(slot.at(e.pauli))) = e.alpha;
        for (std::size_t di = 0; di < dists.size(); ++di) {
          const Eigen::VectorXd err = pauli_table[di] * alpha - truths[di];
          rms[di][si][bi] += std::sqrt(err.squaredNorm() / static_cast<double>(n_test)) / channels;
        }
        if (ci == 0 && si + 1 == sigmas.size() && bi + 1 == budgets.size()) hypothesis_json = to_json(h);
      }
    }
  }

  std::string csv = "n,distribution,sigma,N,rms\n";
  for (std::size_t di = 0; di < dists.size(); ++di) {
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
      for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        csv += csv_row({std::to_string(n), std::string(to_string(dists[di])), format_double(sigmas[si]),
                        std::to_string(budgets[bi]), format_double(rms[di][si][bi])});
      }
    }
  }

  RunOutcome out;
  out.files["learning_curve.csv"] = csv;
  out.files["hypothesis.json"] = hypothesis_json.dump(2) + "\n";
  const auto lo_sigma = static_cast<std::size_t>(std::min_element(sigmas.begin(), sigmas.end()) - sigmas.begin());
  const auto hi_sigma = static_cast<std::size_t>(std::max_element(sigmas.begin(), sigmas.end()) - sigmas.begin());
  auto cmp_it = std::find(budgets.begin(), budgets.end(), compare_n);
  const auto cmp = static_cast<std::size_t>((cmp_it == budgets.end() ? budgets.end() - 1 : cmp_it) - budgets.begin());
  Json sj = Json::object();
  for (std::size_t di = 0; di < dists.size(); ++di) {
    const std::string name(to_string(dists[di]));
    out.verdicts.push_back({"sigma_improves_" + name,
                            verdict_of(rms[di][lo_sigma][cmp] <= rms[di][hi_sigma][cmp] + slack)});
    sj[name] = {{"rms_low_sigma", rms[di][lo_sigma][cmp]},
                {"rms_high_sigma", rms[di][hi_sigma][cmp]},
                {"zero_predictor_rms", baseline[di]}};
    if (budgets.front() == 0) {
      bool same = true;
      for (std::size_t si = 0; si < sigmas.size(); ++si) {
        same = same && std::abs(rms[di][si][0] - baseline[di]) <= 1e-12;
      }
      out.verdicts.push_back({"zero_budget_baseline_" + name, verdict_of(same)});
    }
  }
  const auto haar = std::find(dists.begin(), dists.end(), StateDistribution::Haar);
  if (haar != dists.end() && dists.size() > 1) {
    const auto hi = static_cast<std::size_t>(haar - dists.begin());
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
      bool lowest = true;
      for (std::size_t di = 0; di < dists.size(); ++di) {
        if (di != hi) lowest = lowest && rms[hi][si].back() <= rms[di][si].back();
      }
      char label[64];
      std::snprintf(label, sizeof label, "haar_lowest_at_max_N_sigma_%g", sigmas[si]);
      out.verdicts.push_back({label, verdict_of(lowest)});
    }
  }
  out.summary = {{"n", n},
                 {"channels", channels},
                 {"k", hp.k},
                 {"k_effective", hp.k_effective},
                 {"epsilon_tilde", hp.epsilon_tilde},
                 {"compare_queries", budgets[cmp]},
                 {"distributions", sj}};
  return out;
}

// ---------------------------------------------------------------------------

RunOutcome run_protocol_bench(const Json& c, const RunContext& ctx) {
  const int n = qubits(c, ctx, 4);
  const Json spec = field(c, "channel", Json{{"kind", "haar"}});
  const Observable obs = observable_or_z1(c, n);
  const double tau = field(c, "tau", 0.2);
  const auto db_size = field<std::uint64_t>(c, "db_size", 200);
  const auto dist = parse_distribution(field(c, "distribution", std::string("stabilizer")));
  auto budgets = field(c, "budgets", std::vector<std::uint64_t>{0, 1000, 5000, 20000});
  const auto rounds = field<std::int64_t>(c, "rounds", 200);
  const double min_pass = field(c, "attack_min_pass", 2.0 / 3.0);
  const double delta = field(c, "delta", 0.1);
  require(tau > 0.0, "tau", "must be > 0");
  require(db_size >= 1, "db_size", "must be >= 1");
  require(rounds >= 1, "rounds", "must be >= 1");
  require(!budgets.empty(), "budgets", "must be non-empty");
  std::sort(budgets.begin(), budgets.end());
  Json oracle_cfg = field(c, "oracle", Json{{"mode", "gaussian"}});
  if (!oracle_cfg.contains("tau")) oracle_cfg["tau"] = tau;
  const auto [mode, oracle_tau] = oracle_from_json(oracle_cfg);

  Rng chan_rng(derive_seed(ctx.seed, Stream::kChannel));
  const Channel channel = channel_from_json(spec, n, chan_rng);
  Rng db_rng(derive_seed(ctx.seed, Stream::kDatabase, 0));
  auto live = setup(channel, obs, tau, db_size, dist, mode, db_rng);
  Rng exact_rng(derive_seed(ctx.seed, Stream::kDatabase, 1));
  auto exact = setup(channel, obs, tau, db_size, dist, ExactMode{}, exact_rng);

  auto rate = [&](auto&& round) {
    std::vector<int> pass(static_cast<std::size_t>(rounds));
    parallel_for(rounds, ctx.jobs, [&](std::int64_t r) {
      Rng rr(derive_seed(ctx.seed, Stream::kRounds, static_cast<std::uint64_t>(r)));
      pass[r] = round(rr).pass ? 1 : 0;
    });
    std::uint64_t k = 0;
    for (int p : pass) k += static_cast<std::uint64_t>(p);
    return k;
  };
  const auto honest = rate([&](Rng& r) { return honest_round(live.verifier, live.prover, r); });
  const auto honest_exact = rate([&](Rng& r) { return honest_round(exact.verifier, exact.prover, r); });
  const auto null_k = rate([&](Rng& r) { return null_round(live.verifier, r); });

  const auto total = static_cast<std::uint64_t>(rounds);
  auto frac = [&](std::uint64_t k) { return static_cast<double>(k) / static_cast<double>(total); };
  const Interval hw = wilson(honest, total), nw = wilson(null_k, total);

  std::string csv =
      "budget,honest,honest_ci_low,honest_ci_high,attack,attack_ci_low,attack_ci_high,null,null_ci_low,null_ci_high\n";
  std::vector<double> attack_rates;
  std::vector<Interval> attack_ci;
  Json spent = Json::array();
  Hyperparams last_hp;
  for (const auto b : budgets) {
    Oracle device = live.prover.device.clone();
    Rng attack_rng(derive_seed(ctx.seed, Stream::kAttack));
    AttackBudget budget;
    budget.queries = b;
    budget.delta = delta;
    const auto adv = mount_attack(device, obs, tau, n, budget, attack_rng, ctx.jobs);
    last_hp = adv.hyperparams;
    spent.push_back(adv.queries_spent);
    const auto k = rate([&](Rng& r) { return attack_round(live.verifier, adv, r); });
    attack_rates.push_back(frac(k));
    attack_ci.push_back(wilson(k, total));
    csv += csv_row({std::to_string(b), format_double(frac(honest)), format_double(hw.low),
                    format_double(hw.high), format_double(frac(k)), format_double(attack_ci.back().low),
                    format_double(attack_ci.back().high), format_double(frac(null_k)),
                    format_double(nw.low), format_double(nw.high)});
  }

  RunOutcome out;
  out.files["protocol.csv"] = csv;
  out.verdicts.push_back({"honest_exact_complete", verdict_of(honest_exact == total)});
  bool mono = true;
  for (std::size_t i = 1; i < attack_rates.size(); ++i) {
    const double slack = std::hypot(0.5 * (attack_ci[i].high - attack_ci[i].low),
                                    0.5 * (attack_ci[i - 1].high - attack_ci[i - 1].low));
    mono = mono && attack_rates[i] >= attack_rates[i - 1] - slack;
  }
  out.verdicts.push_back({"attack_monotone", verdict_of(mono)});
  if (min_pass > 0.0) {
    out.verdicts.push_back({"attack_min_pass", verdict_of(attack_rates.back() >= min_pass)});
  }
  out.summary = {{"n", n},
                 {"tau", tau},
                 {"oracle_mode", mode_name(mode)},
                 {"oracle_tau", oracle_tau},
                 {"rounds", rounds},
                 {"honest_pass_rate", frac(honest)},
                 {"honest_exact_pass_rate", frac(honest_exact)},
                 {"null_pass_rate", frac(null_k)},
                 {"attack_pass_rates", attack_rates},
                 {"queries_spent", spent},
                 {"learner_k", last_hp.k},
                 {"learner_epsilon_tilde", last_hp.epsilon_tilde},
                 {"corollary_queries", corollary_query_count(last_hp, n)}};
  return out;
}

// ---------------------------------------------------------------------------

RunOutcome run_bounds_suite(const Json& c, const RunContext& ctx) {
  ExperimentReport all{"bounds", {}};
  Rng rng(derive_seed(ctx.seed, Stream::kSamples));

  const Json var = field(c, "variance", Json::object());
  if (field(var, "enabled", true)) {
    const auto kinds = field(var, "ensembles", std::vector<std::string>{"clifford"});
    const auto ns = ctx.n > 0 ? std::vector<int>{ctx.n} : field(var, "ns", std::vector<int>{1, 2, 3, 4});
    const int pairs = field(var, "pairs", 10);
    const auto samples = field<std::uint64_t>(var, "samples", 100000);
    const int resamples = field(var, "resamples", 1000);
    for (const auto& kname : kinds) {
      const auto kind = parse_ensemble(kname);
      for (int n : ns) {
        for (int p = 0; p < pairs; ++p) {
          Rng pr(derive_seed(derive_seed(ctx.seed, Stream::kStates, static_cast<std::uint64_t>(n)),
                             Stream::kStates, static_cast<std::uint64_t>(p)));
          const DensityMatrix rho = (p % 2 == 0) ? sample_state(StateDistribution::Haar, n, pr).rho
                                                 : random_density_matrix(n, pr);
          const Observable o = random_observable(n, 1 + p % 3, 2, pr);
          all.append(variance_experiment(kind, n, rho, o, samples, pr, ctx.jobs, resamples));
        }
      }
    }
  }

  const Json con = field(c, "concentration", Json::object());
  if (field(con, "enabled", true)) {
    const auto ns = field(con, "ns", std::vector<int>{1, 2, 3, 4});
    all.append(concentration_experiment(ns, field(con, "tau", 0.5),
                                        field<std::uint64_t>(con, "samples", 100000), rng, ctx.jobs));
  }

  const Json sp = field(c, "spike", Json::object());
  if (field(sp, "enabled", true)) {
    const int n = ctx.n > 0 ? ctx.n : field(sp, "n", 3);
    const auto paulis = enumerate_low_degree(n, std::min(n, field(sp, "max_degree", 2)));
    all.append(spike_distinguish_check(n, field(sp, "epsilon", 0.1), paulis, rng, field(sp, "states", 10)));
  }

  const Json mc = field(c, "mean_channel", Json::object());
  if (field(mc, "enabled", true)) {
    const auto kinds = field(mc, "ensembles", std::vector<std::string>{"haar", "clifford"});
    const auto ns = field(mc, "ns", std::vector<int>{1, 2});
    const auto samples = field<std::uint64_t>(mc, "samples", 100000);
    for (const auto& kname : kinds) {
      for (int n : ns) all.append(mean_channel_check(parse_ensemble(kname), n, samples, rng, ctx.jobs));
    }
  }

  RunOutcome out;
  out.files["bounds.csv"] = to_csv(all);
  std::map<std::string, Verdict> by_check;
  for (const auto& r : all.rows) {
    auto& v = by_check.try_emplace(r.check, Verdict::Pass).first->second;
    if (r.verdict == Verdict::Fail || (r.verdict == Verdict::Inconclusive && v == Verdict::Pass)) v = r.verdict;
  }
  for (const auto& [k, v] : by_check) out.verdicts.push_back({k, v});
  out.summary = {{"rows", all.rows.size()}};
  return out;
}

}  // namespace qpsq
