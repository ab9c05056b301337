// Copyright 2026 The qrt Authors
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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"

namespace {

using namespace qrt;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << detail << std::endl;
}

DensityMatrix bell() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0;
  return pure_state(v, {2, 2});
}

DensityMatrix ghz() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(7) = 1.0;
  return pure_state(v, {2, 2, 2});
}

void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const auto basis = LocalBasisPair::random(rng, 2, 2);
    for (auto v : {DiscordVariant::CC, DiscordVariant::QC})
      worst = std::max(worst, std::abs(relative_entropy(rho, dephase(rho, basis, v)) - discord_objective(rho, basis, v)));
  }
  const double secs = seconds_since(t0);
  report(1, "Dephasing saturation", worst <= 1e-8 && secs < 10.0,
         "200 states x {CC,QC}, max deviation " + sci(worst) + " (limit 1e-8), " + sci(secs) + " s");
}

void criterion2() {
  const auto t0 = Clock::now();
  const double cc = relent_discord(bell(), DiscordVariant::CC).value;
  const double secs = seconds_since(t0);
  const double mbqd = measurement_discord(bell()).value;
  const OracleResult o = sampled_relent_of_resource(bell(), cc_sampler(2, 2), 10000, 2);
  const bool ok = std::abs(cc - 1.0) <= 1e-3 && secs < 10.0 && std::abs(mbqd - 1.0) <= 1e-3 && o.value >= 1.0 - 1e-6;
  report(2, "Bell-state measures", ok,
         "CC " + sci(cc) + " in " + sci(secs) + " s, MBQD " + sci(mbqd) + ", 1e4-sample CC oracle " + sci(o.value));
}

void criterion3() {
  const auto t0 = Clock::now();
  const auto d = cli::preset_bound_fuzz(cli::FuzzKind::Discord, 500, {2, 2}, 303);
  std::size_t fannes_fail = 0, fannes_pairs = 0;
  for (std::size_t dim : {2u, 4u, 8u}) {
    const auto f = cli::preset_bound_fuzz(cli::FuzzKind::Fannes, 1000, {dim}, 304 + dim);
    fannes_fail += f.fail;
    fannes_pairs += f.checks.size();
  }
  report(3, "Discord continuity and Fannes-Audenaert", d.fail == 0 && fannes_fail == 0,
         "discord 500 pairs: " + std::to_string(d.pass) + " hold, " + std::to_string(d.inconclusive) + " inconclusive, " +
             std::to_string(d.fail) + " violated (slack 2e-3); Fannes " + std::to_string(fannes_pairs) + " pairs, " +
             std::to_string(fannes_fail) + " violated at 1e-9; " + sci(seconds_since(t0)) + " s");
}

void criterion4() {
  const auto t0 = Clock::now();
  OptimizerConfig cfg;
  cfg.restarts = 16;
  Rng rng(404);
  int violations = 0;
  double worst = kInfinity;
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const DensityMatrix sigma = random_state_any_rank(rng, {2, 2});
    const DensityMatrix joint = merge_subsystems(permute_subsystems(tensor(rho, sigma), {0, 2, 1, 3}), {2, 2});
    const double margin = measurement_discord(rho, cfg).value + measurement_discord(sigma, cfg).value + 3e-3 -
                          measurement_discord(joint, cfg).value;
    worst = std::min(worst, margin);
    if (margin < 0.0) ++violations;
  }
  report(4, "MBQD subadditivity", violations == 0,
         "50 qubit-pair instances, " + std::to_string(violations) + " violations, smallest margin " + sci(worst) +
             " (slack 3e-3), " + sci(seconds_since(t0)) + " s");
}

void criterion5() {
  const auto t0 = Clock::now();
  const MeasureReport g = relent_nonmarkovianity(ghz());
  Rng rng(505);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, std::abs(relent_nonmarkovianity(random_markov_state(rng, {2, 2, 2})).value));
  const auto f = cli::preset_bound_fuzz(cli::FuzzKind::Markov, 300, {2, 2, 2}, 506);
  const bool ok = std::abs(g.value - 1.0) <= 1e-3 && g.detail == "{(1,1),(1,1)}" && worst <= 1e-5 && f.fail == 0 &&
                  f.not_asserted == 0;
  report(5, "Non-Markovianity", ok,
         "GHZ " + sci(g.value) + " with " + g.detail + "; max |value| on 100 Markov states " + sci(worst) +
             "; bound on 300 pairs with T <= 1/3: " + std::to_string(f.pass) + " hold, " + std::to_string(f.inconclusive) +
             " inconclusive, " + std::to_string(f.fail) + " violated; " + sci(seconds_since(t0)) + " s");
}

void criterion6() {
  const double one = nongaussianity(FockState::diagonal({0.0, 1.0, 0.0}));
  const double thermal = nongaussianity(thermal_state(1.0, thermal_cutoff(1.0)));
  Rng rng(606);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = random_simplex(rng, 2 + i % 30);
    worst = std::max(worst, std::abs(nongaussianity_fock_diagonal(p) - nongaussianity(FockState::diagonal(p))));
  }
  report(6, "Non-Gaussianity closed forms", std::abs(one - 2.0) <= 1e-6 && std::abs(thermal) <= 1e-6 && worst <= 1e-7,
         "delta[|1>] " + sci(one) + ", delta[thermal] " + sci(thermal) + ", fast vs covariance path max gap " + sci(worst));
}

void criterion7() {
  const auto t0 = Clock::now();
  const double energy = 2.0;
  const std::size_t cutoff = 2100;
  bool ok = true;
  double prev_t = 2.0, worst_match = 0.0;
  std::string values;
  for (double alpha : {0.1, 0.01, 0.001}) {
    const Counterexample c = counterexample_states(energy, alpha, cutoff);
    const double measured = std::abs(nongaussianity(c.rho) - nongaussianity(c.sigma));
    const double gap = counterexample_gap(energy, alpha);
    const double g = counterexample_lower_bound(energy, alpha);
    worst_match = std::max(worst_match, std::abs(measured - gap));
    ok = ok && c.trace_distance < prev_t && measured >= g && g > 0.0 && c.energy_rho <= energy;
    // g(alpha) > 2.5 holds from alpha = 0.01 down; g(0.1) = f(1.9) - h2(0.1) is about 2.226
    if (alpha <= 0.01) ok = ok && g > 2.5;
    prev_t = c.trace_distance;
    values += " alpha=" + sci(alpha) + ": T=" + sci(c.trace_distance) + " gap=" + sci(measured) + " g=" + sci(g) + ";";
  }
  const double secs = seconds_since(t0);
  ok = ok && worst_match <= 1e-6 && secs < 5.0;
  report(7, "Discontinuity counterexample", ok,
         "E=2 at cutoff 2100," + values + " max |measured - f(alpha m) + h2(alpha)| " + sci(worst_match) + ", " + sci(secs) + " s");
}

void criterion8() {
  const GibbsResult a = gibbs_state({0.0, 1.0}, 0.5);
  const GibbsResult b = gibbs_state({0.0, 1.0}, 0.25);
  const GibbsResult c = gibbs_state(oscillator_energies(60), 1.0);
  const double h = h2(0.25);
  const bool ok = std::abs(a.beta) <= 1e-8 && std::abs(a.entropy_bits - 1.0) <= 1e-8 &&
                  std::abs(b.beta - std::log(3.0)) <= 1e-8 && std::abs(b.entropy_bits - h) <= 1e-8 &&
                  std::abs(c.beta - std::log(2.0)) <= 1e-6 && std::abs(c.entropy_bits - 2.0) <= 1e-6;
  report(8, "Gibbs solver", ok,
         "qubit E=1/2 beta " + sci(a.beta) + " S " + sci(a.entropy_bits) + "; E=1/4 beta-ln3 " + sci(b.beta - std::log(3.0)) +
             " S-h2 " + sci(b.entropy_bits - h) + "; oscillator beta-ln2 " + sci(c.beta - std::log(2.0)) + " S-2 " +
             sci(c.entropy_bits - 2.0));
}

void criterion9() {
  const auto t0 = Clock::now();
  auto cc = [](const DensityMatrix& x) { return relent_discord(x, DiscordVariant::CC).value; };
  const auto seq = regularized_estimate(cc, bell(), 2);
  const double secs = seconds_since(t0);
  report(9, "Regularization harness", seq[1].second <= seq[0].second + 2e-3 && secs < 120.0,
         "Bell CC R/n: n=1 " + sci(seq[0].second) + ", n=2 " + sci(seq[1].second) + ", " + sci(secs) + " s");
}

std::string capture(const std::string& cmd, int* status) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "";
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  *status = pclose(p);
  return out;
}

void criterion10() {
  const std::string bin = QRT_CLI_PATH, data = QRT_DATA_DIR;
  const std::vector<std::string> commands{
      "discord --variant cc --state " + data + "/bell.json --restarts 32 --seed 7",
      "discord --variant mbqd --state " + data + "/bell.json --seed 3",
      "markov --state " + data + "/ghz.json --seed 1",
      "gauss counterexample --energy 2 --alpha 0.01",
      "gauss gibbs --oscillator 60 --E 1",
      "oracle --state " + data + "/bell.json --samples 2000 --seed 11",
      "fuzz --which discord --pairs 10 --seed 5",
  };
  std::size_t identical = 0;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0, s3 = 0;
    const std::string a = capture("QRT_THREADS=1 " + bin + " " + c, &s1);
    const std::string b = capture("QRT_THREADS=1 " + bin + " " + c, &s2);
    const std::string d = capture("QRT_THREADS=4 " + bin + " " + c, &s3);
    if (s1 == 0 && s2 == 0 && s3 == 0 && !a.empty() && a == b && a == d) ++identical;
  }
  report(10, "CLI determinism", identical == commands.size(),
         std::to_string(identical) + "/" + std::to_string(commands.size()) +
             " invocations byte-identical across repeated runs and thread counts");
}

}  // namespace

int main() {
  const std::array<std::function<void()>, 10> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL (exception) " << e.what() << std::endl;
    }
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
