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

#include "qpsq/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qpsq/channel.hpp"
#include "qpsq/kernels.hpp"
#include "qpsq/stats.hpp"

namespace qpsq {

namespace {

constexpr double kExactTol = 1e-10;
constexpr std::uint64_t kChunk = 1024;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Matrix conjugate(const Matrix& u, const Matrix& rho) { return u * rho * u.adjoint(); }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict ExperimentReport::overall() const {
  bool inconclusive = false;
  for (const auto& r : rows) {
    if (r.verdict == Verdict::Fail) return Verdict::Fail;
    if (r.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

void ExperimentReport::append(const ExperimentReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "check,params,estimate,ci,bound,verdict\n";
  for (const auto& row : r.rows) {
    os << row.check << ',' << row.params << ',' << fmt(row.estimate) << ',' << fmt(row.ci)
       << ',' << fmt(row.bound) << ',' << to_string(row.verdict) << '\n';
  }
  return os.str();
}

ExperimentReport variance_experiment(EnsembleKind kind, int n, const DensityMatrix& rho,
                                     const Observable& o, std::uint64_t samples, Rng& rng,
                                     int jobs, int resamples) {
  if (rho.num_qubits() != n || o.num_qubits() != n) {
    throw std::invalid_argument("variance experiment: qubit count mismatch");
  }
  if (o.pauli_1_norm() > 1.0 + 1e-12 && o.operator_norm() > 1.0 + 1e-9) {
    throw std::invalid_argument("variance experiment needs ||O|| <= 1");
  }
  if (samples < 2) throw std::invalid_argument("variance experiment needs >= 2 samples");
  const std::uint64_t master = rng();
  const Matrix om = to_matrix(o);
  const auto values = sample_parallel(
      samples, master,
      [&](std::uint64_t, Rng& r) {
        return expectation(om, DensityMatrix::trusted(conjugate(sample_unitary(kind, n, r), rho.matrix())));
      },
      jobs);
  const auto est = bootstrap_variance(values, resamples, derive_seed(master, Stream::kBootstrap));
  ReportRow row;
  row.check = "variance";
  row.params = std::string(to_string(kind)) + " n=" + std::to_string(n) +
               " O=" + o.to_string() + " samples=" + std::to_string(samples);
  row.estimate = est.value;
  row.ci = est.half_width;
  row.bound = 1.0 / (std::ldexp(1.0, n) + 1.0);
  row.verdict = est.value <= row.bound + 3.0 * est.half_width ? Verdict::Pass : Verdict::Fail;
  return {"variance", {row}};
}

ExperimentReport concentration_experiment(std::span<const int> ns, double tau,
                                          std::uint64_t samples, Rng& rng, int jobs) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  ExperimentReport rep{"concentration", {}};
  double prev = 0.0, prev_hw = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    require_dense(n);
    const std::uint64_t seed = derive_seed(rng(), Stream::kSamples, static_cast<std::uint64_t>(n));
    const auto obs = Observable::from_pauli(PauliString::single(n, 0, Pauli::Z));
    const Matrix om = to_matrix(obs);
    // tr(O Phi_dep(rho)) = tr(O) / 2^n = 0 for Z_1.
    const double reference = obs.identity_coefficient();
    const auto hits = sample_parallel(
        samples, seed,
        [&](std::uint64_t, Rng& r) {
          const Matrix u = haar_unitary(n, r);
          const Vector psi = u.col(0);
          const double v = (psi.adjoint() * om * psi)(0, 0).real();
          return std::abs(v - reference) > tau ? 1 : 0;
        },
        jobs);
    std::uint64_t k = 0;
    for (int h : hits) k += static_cast<std::uint64_t>(h);
    const double p = static_cast<double>(k) / static_cast<double>(samples);
    const Interval w = wilson(k, samples);
    const double hw = 0.5 * (w.high - w.low);
    ReportRow row;
    row.check = "concentration";
    row.params = "n=" + std::to_string(n) + " tau=" + fmt(tau) + " samples=" + std::to_string(samples);
    row.estimate = p;
    row.ci = hw;
    row.bound = 2.0 * std::exp(-std::ldexp(1.0, n) * tau * tau / 48.0);
    row.verdict = w.low <= row.bound ? Verdict::Pass : Verdict::Fail;
    rep.rows.push_back(row);
    if (i > 0) {
      ReportRow mono;
      mono.check = "monotone";
      mono.params = "n=" + std::to_string(ns[i - 1]) + "->" + std::to_string(n);
      mono.estimate = p - prev;
      mono.ci = std::hypot(hw, prev_hw);
      mono.bound = 0.0;
      mono.verdict = mono.estimate <= mono.ci ? Verdict::Pass : Verdict::Fail;
      rep.rows.push_back(mono);
    }
    prev = p;
    prev_hw = hw;
  }
  return rep;
}

ExperimentReport spike_distinguish_check(int n, double epsilon,
                                         std::span<const PauliString> paulis, Rng& rng,
                                         int num_states) {
  if (!(epsilon > 0.0 && 3.0 * epsilon <= 1.0 + 1e-15)) {
    throw std::invalid_argument("spike check needs 0 < 3 eps <= 1");
  }
  ExperimentReport rep{"spike", {}};
  const Channel dep = Channel::depolarizing(n);
  std::vector<Channel> spikes;
  for (const auto& p : paulis) {
    if (!p.is_identity()) spikes.push_back(Channel::pauli_spike(epsilon, p));
  }
  for (int s = 0; s < num_states; ++s) {
    const DensityMatrix rho = random_density_matrix(n, rng);
    double spike_err = 0.0, dep_err = 0.0;
    std::size_t j = 0;
    for (const auto& p : paulis) {
      if (p.is_identity()) continue;
      const DensityMatrix out = apply(spikes[j++], rho);
      for (const auto& q : paulis) {
        if (q.is_identity()) continue;
        const double want = (p == q) ? 3.0 * epsilon : 0.0;
        spike_err = std::max(spike_err, std::abs(pauli_expectation(q, out) - want));
      }
      dep_err = std::max(dep_err, std::abs(pauli_expectation(p, apply(dep, rho))));
    }
    const std::string params = "n=" + std::to_string(n) + " eps=" + fmt(epsilon) +
                               " state=" + std::to_string(s);
    rep.rows.push_back({"spike", params, spike_err, 0.0, kExactTol,
                        spike_err <= kExactTol ? Verdict::Pass : Verdict::Fail});
    rep.rows.push_back({"depolarizing", params, dep_err, 0.0, kExactTol,
                        dep_err <= kExactTol ? Verdict::Pass : Verdict::Fail});
  }
  return rep;
}

ExperimentReport mean_channel_check(EnsembleKind kind, int n, std::uint64_t samples, Rng& rng,
                                    int jobs) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const DensityMatrix rho = random_density_matrix(n, rng);
  const std::uint64_t master = rng();
  const auto dim = static_cast<Eigen::Index>(1ULL << n);
  // Fixed-size chunks summed in order keep the result independent of jobs.
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Moments {
    Eigen::MatrixXd re, im, re2, im2;
  };
  std::vector<Moments> parts(chunks);
  parallel_for(static_cast<std::int64_t>(chunks), jobs, [&](std::int64_t c) {
    Moments m{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim),
              Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t hi = std::min(samples, lo + kChunk);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Rng r(derive_seed(master, Stream::kSamples, i));
      const Matrix out = conjugate(sample_unitary(kind, n, r), rho.matrix());
      m.re += out.real();
      m.im += out.imag();
      m.re2 += out.real().cwiseAbs2();
      m.im2 += out.imag().cwiseAbs2();
    }
    parts[c] = std::move(m);
  });
  Moments tot = std::move(parts[0]);
  for (std::uint64_t c = 1; c < chunks; ++c) {
    tot.re += parts[c].re;
    tot.im += parts[c].im;
    tot.re2 += parts[c].re2;
    tot.im2 += parts[c].im2;
  }
  const double ns = static_cast<double>(samples);
  const double target_diag = 1.0 / static_cast<double>(dim);
  double worst = 0.0, worst_hw = 0.0;
  bool ok = true;
  auto check = [&](double sum, double sum2, double target) {
    const double m = sum / ns;
    const double var = samples > 1 ? std::max(0.0, (sum2 - ns * m * m) / (ns - 1.0)) : 0.0;
    const double hw = kZ95 * std::sqrt(var / ns);
    const double dev = std::abs(m - target);
    if (dev > 3.0 * hw + 1e-12) ok = false;
    if (dev > worst) {
      worst = dev;
      worst_hw = hw;
    }
  };
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      check(tot.re(i, j), tot.re2(i, j), i == j ? target_diag : 0.0);
      check(tot.im(i, j), tot.im2(i, j), 0.0);
    }
  }
  ReportRow row;
  row.check = "mean-channel";
  row.params = std::string(to_string(kind)) + " n=" + std::to_string(n) +
               " samples=" + std::to_string(samples);
  row.estimate = worst;
  row.ci = worst_hw;
  row.bound = 3.0 * worst_hw;
  row.verdict = samples < 2 ? Verdict::Inconclusive : (ok ? Verdict::Pass : Verdict::Fail);
  return {"mean-channel", {row}};
}

}  // namespace qpsq
