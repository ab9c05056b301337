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

#pragma once

// Command-line front end. All logic lives here so the presets can be driven
// in-process by tests; qrt.cpp only forwards argv.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrt/qrt.hpp"

namespace qrt::cli {

inline constexpr double kGaussTolerance = 1e-7;
inline constexpr double kGibbsTolerance = 1e-10;
inline constexpr double kFannesSlack = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form, so CSV output is byte-stable.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Presets

struct CounterexampleRow {
  double alpha = 0.0;
  std::size_t m = 0;
  double trace_distance = 0.0;
  double gap_bits = 0.0;       // f(alpha m) - h2(alpha)
  double measured_bits = 0.0;  // |delta[rho] - delta[sigma]| from the constructed states
  double lower_bound_bits = 0.0;
};

/// Rows sorted by alpha descending. Each pair of states is built at cutoff m.
inline std::vector<CounterexampleRow> preset_counterexample_table(double energy, std::vector<double> alphas) {
  if (alphas.empty()) throw UsageError("the alpha list is empty");
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  std::vector<CounterexampleRow> rows;
  for (double a : alphas) {
    const Counterexample c = counterexample_states(energy, a, counterexample_level(energy, a));
    CounterexampleRow r;
    r.alpha = a;
    r.m = c.m;
    r.trace_distance = c.trace_distance;
    r.gap_bits = counterexample_gap(energy, a);
    r.measured_bits = std::abs(nongaussianity(c.rho) - nongaussianity(c.sigma));
    r.lower_bound_bits = energy - a >= 0.0 ? counterexample_lower_bound(energy, a) : std::nan("");
    rows.push_back(r);
  }
  return rows;
}

enum class FuzzKind { Discord, Mbqd, Markov, Fannes };

inline FuzzKind parse_fuzz_kind(const std::string& s) {
  if (s == "discord") return FuzzKind::Discord;
  if (s == "mbqd") return FuzzKind::Mbqd;
  if (s == "markov") return FuzzKind::Markov;
  if (s == "fannes") return FuzzKind::Fannes;
  throw UsageError("unknown fuzz target '" + s + "'");
}

struct FuzzReport {
  std::vector<BoundCheck> checks;
  std::size_t pass = 0, inconclusive = 0, fail = 0, not_asserted = 0;
  double slack = 0.0;
  double worst_margin = kInfinity;  // smallest rhs - lhs among asserted checks
};

/// Random state pairs checked against a continuity bound. Even pairs are
/// independent draws; odd pairs (and all Markov pairs) mix rho with a random
/// state at weight t in (0, 0.3), which keeps T <= 0.3. Pair i depends only on
/// (seed, i), and results are assembled in index order.
inline FuzzReport preset_bound_fuzz(FuzzKind kind, std::size_t n_pairs, const Dims& dims, std::uint64_t seed,
                                    OptimizerConfig cfg = {}, DiscordVariant variant = DiscordVariant::CC) {
  const std::size_t parties = dims.size();
  if ((kind == FuzzKind::Discord || kind == FuzzKind::Mbqd) && parties != 2)
    fail(ErrorKind::DimMismatch, "discord fuzzing needs dims dA,dB");
  if (kind == FuzzKind::Markov) {
    if (parties != 3) fail(ErrorKind::DimMismatch, "markov fuzzing needs dims dA,dB,dC");
    if (dims[1] > kMaxMarkovDimB) fail(ErrorKind::DimTooLarge, "dB exceeds 6");
  }
  if (product(dims) < 2) fail(ErrorKind::DomainError, "dimension must be at least 2");
  check_config(cfg);

  const std::size_t workers = cfg.threads ? cfg.threads : worker_count();
  cfg.threads = 1;  // parallelism lives at the pair level
  FuzzReport rep;
  rep.checks.resize(n_pairs);
  parallel_for(n_pairs, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, 0xF022ULL, i));
    const Dims d = kind == FuzzKind::Fannes ? Dims{product(dims)} : dims;
    const DensityMatrix rho = random_state_any_rank(rng, d);
    const DensityMatrix tau = random_state_any_rank(rng, d);
    DensityMatrix sigma = tau;
    if (kind == FuzzKind::Markov || i % 2 == 1) {
      const double t = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
      sigma = DensityMatrix::from_trusted((1.0 - t) * rho.matrix() + t * tau.matrix(), d);
    }
    switch (kind) {
      case FuzzKind::Discord: rep.checks[i] = discord_continuity_check(rho, sigma, variant, cfg); break;
      case FuzzKind::Mbqd: rep.checks[i] = mbqd_continuity_check(rho, sigma, cfg); break;
      case FuzzKind::Markov: rep.checks[i] = markov_continuity_check(rho, sigma, cfg); break;
      case FuzzKind::Fannes: {
        BoundCheck c;
        c.trace_distance = trace_distance(rho, sigma);
        c.lhs = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
        c.rhs = fannes_audenaert_bound(c.trace_distance, rho.dim());
        c.slack = kFannesSlack;
        c.status = c.lhs <= c.rhs + kFannesSlack ? BoundStatus::Holds : BoundStatus::Violated;
        rep.checks[i] = c;
        break;
      }
    }
  });
  rep.slack = kind == FuzzKind::Fannes ? kFannesSlack : 2.0 * cfg.tolerance;
  for (const auto& c : rep.checks) {
    switch (c.status) {
      case BoundStatus::Holds: ++rep.pass; break;
      case BoundStatus::Inconclusive: ++rep.inconclusive; break;
      case BoundStatus::Violated: ++rep.fail; break;
      case BoundStatus::NotAsserted: ++rep.not_asserted; break;
    }
    if (c.status != BoundStatus::NotAsserted) rep.worst_margin = std::min(rep.worst_margin, c.margin());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Front end

struct Common {
  std::uint64_t seed = 0;
  std::size_t restarts = 0;  // 0: the measure's default
  std::size_t max_iters = 20000;
  double ftol = 1e-9;
  std::string output;
  std::string format = "json";
};

inline void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--restarts", c.restarts, "optimizer restarts (default: measure-specific)")->check(CLI::PositiveNumber);
  app->add_option("--max-iters", c.max_iters, "objective evaluations per restart")->check(CLI::PositiveNumber);
  app->add_option("--ftol", c.ftol, "optimizer value tolerance")->check(CLI::PositiveNumber);
  app->add_option("--output,-o", c.output, "write to FILE instead of stdout");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

inline OptimizerConfig make_config(const Common& c, std::size_t default_restarts) {
  OptimizerConfig cfg;
  cfg.seed = c.seed;
  cfg.restarts = c.restarts ? c.restarts : default_restarts;
  cfg.max_iters = c.max_iters;
  cfg.ftol = c.ftol;
  return cfg;
}

inline void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) fail(ErrorKind::ParseError, "cannot write '" + c.output + "'");
  f << text;
}

inline void emit_json(const Common& c, const Json& j, std::ostream& out) {
  if (c.format != "json") throw UsageError("this command only produces JSON");
  emit(c, j.dump(2) + "\n", out);
}

inline DiscordVariant parse_variant(const std::string& v) {
  if (v == "cc") return DiscordVariant::CC;
  if (v == "qc") return DiscordVariant::QC;
  return DiscordVariant::CQ;
}

inline std::vector<double> read_energies(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open energies file '" + path + "'");
  try {
    Json j;
    in >> j;
    return j.get<std::vector<double>>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline Json fuzz_json(const FuzzReport& r) {
  return Json{{"pass", r.pass},
              {"inconclusive", r.inconclusive},
              {"fail", r.fail},
              {"not_asserted", r.not_asserted},
              {"slack", r.slack},
              {"worst_margin", number(r.worst_margin)}};
}

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 success, 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum resource measures: discord, non-Markovianity and non-Gaussianity", "qrt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  Common common;
  std::string state_path, sigma_path, variant = "cc", direction = "onB", measure = "cc", sampler = "cc";
  std::string which, energies_path;
  bool povm = false;
  std::size_t samples = 1000, n_max = 2, pairs = 100, oscillator = 0, cutoff = 0;
  std::vector<std::size_t> dims{2, 2};
  std::vector<double> fock_diag, alphas, lambdas;
  double tail_mass = 0.0, energy = 0.0, alpha = 0.0, epsilon = 0.0;

  auto* discord = app.add_subcommand("discord", "relative entropy of discord or measurement-based discord");
  add_common(discord, common);
  discord->add_option("--variant", variant, "cc|qc|cq|mbqd")->check(CLI::IsMember({"cc", "qc", "cq", "mbqd"}));
  discord->add_option("--state", state_path, "state JSON file")->required();
  discord->add_option("--sigma", sigma_path, "second state: report the continuity bound instead");
  discord->add_option("--direction", direction, "mbqd: measured party")->check(CLI::IsMember({"onB", "onA"}));
  discord->add_flag("--povm", povm, "mbqd: optimize over rank-1 POVMs");

  auto* markov = app.add_subcommand("markov", "relative entropy of non-Markovianity");
  add_common(markov, common);
  markov->add_option("--state", state_path, "tripartite state JSON file")->required();
  markov->add_option("--sigma", sigma_path, "second state: report the continuity bound instead");

  auto* gauss = app.add_subcommand("gauss", "single-mode non-Gaussianity");
  gauss->require_subcommand(1);
  auto* g_delta = gauss->add_subcommand("delta", "non-Gaussianity of a Fock-basis state");
  add_common(g_delta, common);
  auto* g_state = g_delta->add_option("--state", state_path, "single-mode state JSON file");
  g_delta->add_option("--fock-diag", fock_diag, "p0,p1,... Fock probabilities")->delimiter(',')->excludes(g_state);
  g_delta->add_option("--tail-mass", tail_mass, "declared weight beyond the cutoff");
  auto* g_counter = gauss->add_subcommand("counterexample", "discontinuity counterexample states");
  add_common(g_counter, common);
  g_counter->add_option("--energy", energy, "energy bound E")->required();
  g_counter->add_option("--alpha", alpha, "mixing weight alpha")->required();
  g_counter->add_option("--cutoff", cutoff, "Fock cutoff (default m)");
  auto* g_table = gauss->add_subcommand("table", "counterexample table over alpha");
  add_common(g_table, common);
  g_table->add_option("--energy", energy, "energy bound E")->required();
  g_table->add_option("--alphas", alphas, "comma-separated alpha values")->delimiter(',');
  auto* g_gibbs = gauss->add_subcommand("gibbs", "Gibbs state with mean energy E");
  add_common(g_gibbs, common);
  auto* g_ef = g_gibbs->add_option("--energies", energies_path, "JSON array of ascending energies starting at 0");
  g_gibbs->add_option("--oscillator", oscillator, "harmonic oscillator levels 0..N")->excludes(g_ef);
  g_gibbs->add_option("--E", energy, "mean energy")->required();
  auto* g_bound = gauss->add_subcommand("bound", "energy-constrained continuity bound");
  add_common(g_bound, common);
  auto* g_bf = g_bound->add_option("--energies", energies_path, "JSON array of energies");
  g_bound->add_option("--oscillator", oscillator, "oscillator cutoff (default: tail <= 1e-8 at E/epsilon)")->excludes(g_bf);
  g_bound->add_option("--epsilon", epsilon, "trace distance epsilon")->required();
  g_bound->add_option("--E", energy, "energy bound")->required();
  auto* g_probe = gauss->add_subcommand("probe", "[tr exp(-lambda H)]^lambda on a lambda grid");
  add_common(g_probe, common);
  auto* g_pf = g_probe->add_option("--energies", energies_path, "JSON array of energies");
  g_probe->add_option("--oscillator", oscillator, "oscillator cutoff (default 1000)")->excludes(g_pf);
  g_probe->add_option("--lambdas", lambdas, "comma-separated lambda values")->delimiter(',')->required();

  auto* oracle = app.add_subcommand("oracle", "sampled relative entropy of resource");
  add_common(oracle, common);
  oracle->add_option("--state", state_path, "state JSON file")->required();
  oracle->add_option("--sampler", sampler, "cc|qc|cq|markov|mixed")->check(CLI::IsMember({"cc", "qc", "cq", "markov", "mixed"}));
  oracle->add_option("--samples", samples, "number of free states")->check(CLI::PositiveNumber);

  auto* reg = app.add_subcommand("regularize", "R(rho^(x)n)/n for n = 1..n_max");
  add_common(reg, common);
  reg->add_option("--state", state_path, "state JSON file")->required();
  reg->add_option("--measure", measure, "cc|qc|cq|mbqd|markov")->check(CLI::IsMember({"cc", "qc", "cq", "mbqd", "markov"}));
  reg->add_option("--n-max", n_max, "largest n")->check(CLI::PositiveNumber);

  auto* fuzz = app.add_subcommand("fuzz", "continuity-bound fuzzing over random state pairs");
  add_common(fuzz, common);
  fuzz->add_option("--which", which, "discord|mbqd|markov|fannes")->required()->check(CLI::IsMember({"discord", "mbqd", "markov", "fannes"}));
  fuzz->add_option("--pairs", pairs, "number of pairs");
  fuzz->add_option("--dims", dims, "comma-separated local dimensions")->delimiter(',');
  fuzz->add_option("--variant", variant, "discord variant")->check(CLI::IsMember({"cc", "qc", "cq"}));

  std::vector<std::string> full{"qrt"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : full) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'qrt --help' for the grammar\n";
    return 2;
  }

  try {
    if (discord->parsed()) {
      const DensityMatrix rho = read_state(state_path);
      const bool mbqd = variant == "mbqd";
      if ((povm || direction != "onB") && !mbqd) throw UsageError("--povm and --direction apply to --variant mbqd");
      const OptimizerConfig cfg = make_config(common, 32);
      MbqdOptions opts;
      opts.side = direction == "onA" ? MeasuredSide::OnA : MeasuredSide::OnB;
      opts.povm = povm;
      Json j{{"command", "discord"}, {"variant", variant}};
      if (!sigma_path.empty()) {
        const DensityMatrix sigma = read_state(sigma_path);
        const BoundCheck c = mbqd ? mbqd_continuity_check(rho, sigma, cfg, opts)
                                  : discord_continuity_check(rho, sigma, parse_variant(variant), cfg);
        j["bound"] = bound_to_json(c);
        j["tolerance"] = cfg.tolerance;
        j["seed"] = cfg.seed;
      } else {
        const MeasureReport r = mbqd ? measurement_discord(rho, cfg, opts) : relent_discord(rho, parse_variant(variant), cfg);
        j.update(report_to_json(r));
      }
      emit_json(common, j, out);
    } else if (markov->parsed()) {
      const DensityMatrix rho = read_state(state_path);
      const OptimizerConfig cfg = make_config(common, markov_default_config().restarts);
      Json j{{"command", "markov"}};
      if (!sigma_path.empty()) {
        j["bound"] = bound_to_json(markov_continuity_check(rho, read_state(sigma_path), cfg));
        j["tolerance"] = cfg.tolerance;
        j["seed"] = cfg.seed;
      } else {
        const MeasureReport r = relent_nonmarkovianity(rho, cfg);
        j.update(report_to_json(r));
        j["structure"] = r.detail;
      }
      emit_json(common, j, out);
    } else if (g_delta->parsed()) {
      FockState s = FockState::diagonal({1.0});
      if (!fock_diag.empty()) {
        s = FockState::diagonal(fock_diag, tail_mass);
      } else if (!state_path.empty()) {
        const DensityMatrix rho = read_state(state_path);
        if (rho.parties() != 1) fail(ErrorKind::DimMismatch, "a single-mode state needs dims [N+1]");
        s = FockState::general(rho.matrix(), tail_mass);
      } else {
        throw UsageError("gauss delta needs --state or --fock-diag");
      }
      const GaussianParams g = mean_and_covariance(s);
      Json j{{"command", "gauss delta"},
             {"delta_bits", number(nongaussianity(s))},
             {"entropy_bits", s.entropy()},
             {"gaussian_entropy_bits", g.entropy()},
             {"mean", {g.mean_q, g.mean_p}},
             {"cov", {{g.cov(0, 0), g.cov(0, 1)}, {g.cov(1, 0), g.cov(1, 1)}}},
             {"symplectic_eigenvalue", g.symplectic_eigenvalue()},
             {"cutoff", s.cutoff()},
             {"tail_mass", s.tail_mass()},
             {"tolerance", kGaussTolerance},
             {"seed", common.seed}};
      if (s.is_diagonal()) j["delta_fock_diagonal_bits"] = nongaussianity_fock_diagonal(s.probabilities());
      emit_json(common, j, out);
    } else if (g_counter->parsed()) {
      const std::size_t m = counterexample_level(energy, alpha);
      const std::size_t cut = cutoff ? cutoff : std::max<std::size_t>(m, 1);
      const Counterexample c = counterexample_states(energy, alpha, cut);
      Json j{{"command", "gauss counterexample"},
             {"energy", energy},
             {"alpha", alpha},
             {"m", c.m},
             {"trace_distance", c.trace_distance},
             {"energy_rho", c.energy_rho},
             {"gap_bits", counterexample_gap(energy, alpha)},
             {"measured_gap_bits", std::abs(nongaussianity(c.rho) - nongaussianity(c.sigma))},
             {"lower_bound_bits", energy >= alpha ? number(counterexample_lower_bound(energy, alpha)) : Json(nullptr)},
             {"cutoff", cut},
             {"tail_mass", 0.0},
             {"tolerance", 1e-6},
             {"seed", common.seed}};
      emit_json(common, j, out);
    } else if (g_table->parsed()) {
      const auto rows = preset_counterexample_table(energy, alphas);
      if (common.format == "csv") {
        std::ostringstream s;
        s << "alpha,m,trace_distance,gap_bits,measured_gap_bits,lower_bound_bits,tolerance,seed\n";
        for (const auto& r : rows)
          s << fmt(r.alpha) << ',' << r.m << ',' << fmt(r.trace_distance) << ',' << fmt(r.gap_bits) << ','
            << fmt(r.measured_bits) << ',' << fmt(r.lower_bound_bits) << ',' << fmt(1e-6) << ',' << common.seed << '\n';
        emit(common, s.str(), out);
      } else {
        Json rj = Json::array();
        for (const auto& r : rows)
          rj.push_back({{"alpha", r.alpha},
                        {"m", r.m},
                        {"trace_distance", r.trace_distance},
                        {"gap_bits", r.gap_bits},
                        {"measured_gap_bits", r.measured_bits},
                        {"lower_bound_bits", number(r.lower_bound_bits)},
                        {"cutoff", r.m}});
        emit_json(common, Json{{"command", "gauss table"}, {"energy", energy}, {"rows", rj}, {"tail_mass", 0.0},
                               {"tolerance", 1e-6}, {"seed", common.seed}},
                  out);
      }
    } else if (g_gibbs->parsed()) {
      if (energies_path.empty() && oscillator == 0) throw UsageError("gauss gibbs needs --energies or --oscillator");
      const auto e = energies_path.empty() ? oscillator_energies(oscillator) : read_energies(energies_path);
      const GibbsResult g = gibbs_state(e, energy);
      emit_json(common,
                Json{{"command", "gauss gibbs"},
                     {"E", energy},
                     {"beta", g.beta},
                     {"log_partition", g.log_partition},
                     {"entropy_bits", g.entropy_bits},
                     {"mean_energy", g.mean_energy},
                     {"cutoff", e.size() - 1},
                     {"tail_mass", 0.0},
                     {"tolerance", kGibbsTolerance},
                     {"seed", common.seed}},
                out);
    } else if (g_bound->parsed()) {
      if (!(epsilon > 0.0 && epsilon <= 0.5)) fail(ErrorKind::DomainError, "epsilon must lie in (0, 1/2]");
      std::size_t cut = oscillator;
      if (energies_path.empty() && cut == 0) cut = thermal_cutoff(energy / epsilon) + 1;
      const auto e = energies_path.empty() ? oscillator_energies(cut) : read_energies(energies_path);
      const double tail = energies_path.empty() ? thermal_tail_mass(energy / epsilon, cut) : 0.0;
      emit_json(common,
                Json{{"command", "gauss bound"},
                     {"epsilon", epsilon},
                     {"E", energy},
                     {"bound_bits", conv_continuity_bound(epsilon, e, energy)},
                     {"cutoff", e.size() - 1},
                     {"tail_mass", tail},
                     {"tolerance", kGibbsTolerance},
                     {"seed", common.seed}},
                out);
    } else if (g_probe->parsed()) {
      const auto e = energies_path.empty() ? oscillator_energies(oscillator ? oscillator : 1000) : read_energies(energies_path);
      const auto rows = hamiltonian_condition_probe(e, lambdas);
      if (common.format == "csv") {
        std::ostringstream s;
        s << "lambda,value,cutoff,seed\n";
        for (const auto& [l, v] : rows) s << fmt(l) << ',' << fmt(v) << ',' << e.size() - 1 << ',' << common.seed << '\n';
        emit(common, s.str(), out);
      } else {
        Json rj = Json::array();
        for (const auto& [l, v] : rows) rj.push_back({{"lambda", l}, {"value", number(v)}});
        emit_json(common, Json{{"command", "gauss probe"}, {"rows", rj}, {"cutoff", e.size() - 1}, {"tail_mass", 0.0},
                               {"tolerance", 1e-12}, {"seed", common.seed}},
                  out);
      }
    } else if (oracle->parsed()) {
      const DensityMatrix rho = read_state(state_path);
      const Dims& d = rho.dims();
      FreeStateSampler s;
      if (sampler == "mixed") s = mixed_sampler(d);
      else if (sampler == "markov") {
        if (d.size() != 3) fail(ErrorKind::DimMismatch, "markov sampler needs a tripartite state");
        s = markov_sampler(d);
      } else {
        if (d.size() != 2) fail(ErrorKind::DimMismatch, "discord samplers need a bipartite state");
        s = sampler == "cc" ? cc_sampler(d[0], d[1]) : sampler == "qc" ? qc_sampler(d[0], d[1]) : cq_sampler(d[0], d[1]);
      }
      const OracleResult r = sampled_relent_of_resource(rho, s, samples, common.seed);
      emit_json(common,
                Json{{"command", "oracle"},
                     {"sampler", sampler},
                     {"value", number(r.value)},
                     {"best_index", r.best_index},
                     {"samples", r.samples},
                     {"infinite", r.infinite},
                     {"tolerance", 1e-9},
                     {"seed", common.seed}},
                out);
    } else if (reg->parsed()) {
      const DensityMatrix rho = read_state(state_path);
      const bool mk = measure == "markov";
      const OptimizerConfig cfg = make_config(common, mk ? markov_default_config().restarts : 32);
      std::function<double(const DensityMatrix&)> f;
      if (mk) f = [cfg](const DensityMatrix& x) { return relent_nonmarkovianity(x, cfg).value; };
      else if (measure == "mbqd") f = [cfg](const DensityMatrix& x) { return measurement_discord(x, cfg).value; };
      else f = [cfg, v = parse_variant(measure)](const DensityMatrix& x) { return relent_discord(x, v, cfg).value; };
      const auto seq = regularized_estimate(f, rho, n_max);
      Json rows = Json::array();
      for (const auto& [n, v] : seq) rows.push_back({{"n", n}, {"value", number(v)}});
      emit_json(common,
                Json{{"command", "regularize"},
                     {"measure", measure},
                     {"sequence", rows},
                     {"weak_additivity_gap", weak_additivity_gap(seq)},
                     {"restarts_used", cfg.restarts},
                     {"tolerance", cfg.tolerance},
                     {"seed", cfg.seed}},
                out);
    } else if (fuzz->parsed()) {
      const FuzzKind kind = parse_fuzz_kind(which);
      const OptimizerConfig cfg = make_config(common, kind == FuzzKind::Markov ? markov_default_config().restarts : 32);
      const FuzzReport r = preset_bound_fuzz(kind, pairs, Dims(dims.begin(), dims.end()), common.seed, cfg, parse_variant(variant));
      if (common.format == "csv") {
        std::ostringstream s;
        s << "index,trace_distance,lhs,rhs,status,slack,seed\n";
        for (std::size_t i = 0; i < r.checks.size(); ++i) {
          const auto& c = r.checks[i];
          s << i << ',' << fmt(c.trace_distance) << ',' << fmt(c.lhs) << ',' << fmt(c.rhs) << ',' << status_name(c.status)
            << ',' << fmt(c.slack) << ',' << common.seed << '\n';
        }
        emit(common, s.str(), out);
      } else {
        Json j{{"command", "fuzz"}, {"which", which}, {"pairs", pairs}, {"dims", dims}};
        j.update(fuzz_json(r));
        j["tolerance"] = kind == FuzzKind::Fannes ? kFannesSlack : cfg.tolerance;
        j["seed"] = common.seed;
        emit_json(common, j, out);
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qrt::cli
