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

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qrt/discord.hpp"
#include "qrt/entropy.hpp"
#include "qrt/markov.hpp"
#include "qrt/random.hpp"

namespace qrt {

// ---------------------------------------------------------------------------
// Free-set membership

/// Classical on `party` (bipartite): the operators (<i| (x) I) rho (|j> (x) I)
/// of the other party, or their mirror image, form a commuting normal family.
inline bool is_classical_on(const DensityMatrix& rho, std::size_t party, double tol = 1e-8) {
  if (rho.parties() != 2) fail(ErrorKind::DimMismatch, "classicality test needs a bipartite state");
  const DensityMatrix work = party == 1 ? rho : permute_subsystems(rho, {1, 0});
  const auto a = static_cast<Eigen::Index>(work.dims()[0]), b = static_cast<Eigen::Index>(work.dims()[1]);
  std::vector<Matrix> family;
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < a; ++j) family.push_back(work.matrix().block(i * b, j * b, b, b));
  for (std::size_t x = 0; x < family.size(); ++x)
    for (std::size_t y = x; y < family.size(); ++y) {
      const Matrix& f = family[x];
      const Matrix& g = family[y];
      if ((f * g - g * f).cwiseAbs().maxCoeff() > tol) return false;
      if ((f * g.adjoint() - g.adjoint() * f).cwiseAbs().maxCoeff() > tol) return false;
    }
  return true;
}

inline bool is_cc(const DensityMatrix& rho, double tol = 1e-8) { return is_classical_on(rho, 0, tol) && is_classical_on(rho, 1, tol); }
inline bool is_qc(const DensityMatrix& rho, double tol = 1e-8) { return is_classical_on(rho, 1, tol); }
inline bool is_cq(const DensityMatrix& rho, double tol = 1e-8) { return is_classical_on(rho, 0, tol); }

// ---------------------------------------------------------------------------
// Samplers

/// Seeded generator of free states. `draw(seed)` is a pure function of the
/// seed, so samples can be evaluated in any order.
struct FreeStateSampler {
  std::string name;
  Dims dims;
  std::function<DensityMatrix(std::uint64_t)> draw;
  std::function<bool(const DensityMatrix&)> is_member;
  bool indexed = false;  // draw() receives the sample index instead of a derived seed
};

inline DensityMatrix random_cc_state(Rng& rng, std::size_t dA, std::size_t dB) {
  const Matrix w = kron(random_unitary(rng, dA), random_unitary(rng, dB));
  const std::vector<double> p = random_simplex(rng, dA * dB);
  RealVector pv(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) pv(static_cast<Eigen::Index>(i)) = p[i];
  return DensityMatrix::from_trusted(w * pv.cast<Complex>().asDiagonal() * w.adjoint(), Dims{dA, dB});
}

/// sum_k p_k rho_k (x) |b_k><b_k| with random rho_k and a Haar basis on B.
inline DensityMatrix random_qc_state(Rng& rng, std::size_t dA, std::size_t dB) {
  const Matrix ub = random_unitary(rng, dB);
  const std::vector<double> p = random_simplex(rng, dB);
  const auto a = static_cast<Eigen::Index>(dA);
  Matrix m = Matrix::Zero(a * static_cast<Eigen::Index>(dB), a * static_cast<Eigen::Index>(dB));
  for (std::size_t k = 0; k < dB; ++k) {
    const DensityMatrix rk = random_state_any_rank(rng, Dims{dA});
    const auto col = ub.col(static_cast<Eigen::Index>(k));
    m += p[k] * kron(rk.matrix(), col * col.adjoint());
  }
  return DensityMatrix::from_trusted(std::move(m), Dims{dA, dB});
}

inline DensityMatrix random_cq_state(Rng& rng, std::size_t dA, std::size_t dB) {
  return permute_subsystems(random_qc_state(rng, dB, dA), {1, 0});
}

inline FreeStateSampler cc_sampler(std::size_t dA, std::size_t dB) {
  return {"cc", {dA, dB}, [=](std::uint64_t s) { Rng r(s); return random_cc_state(r, dA, dB); },
          [](const DensityMatrix& x) { return is_cc(x); }};
}
inline FreeStateSampler qc_sampler(std::size_t dA, std::size_t dB) {
  return {"qc", {dA, dB}, [=](std::uint64_t s) { Rng r(s); return random_qc_state(r, dA, dB); },
          [](const DensityMatrix& x) { return is_qc(x); }};
}
inline FreeStateSampler cq_sampler(std::size_t dA, std::size_t dB) {
  return {"cq", {dA, dB}, [=](std::uint64_t s) { Rng r(s); return random_cq_state(r, dA, dB); },
          [](const DensityMatrix& x) { return is_cq(x); }};
}
inline FreeStateSampler markov_sampler(Dims dims) {
  return {"markov", dims, [=](std::uint64_t s) { Rng r(s); return random_markov_state(r, dims); },
          [](const DensityMatrix& x) { return is_markov(x); }};
}
/// Always emits I/D.
inline FreeStateSampler mixed_sampler(Dims dims) {
  return {"mixed", dims, [=](std::uint64_t) { return maximally_mixed(dims); }, [](const DensityMatrix&) { return true; }};
}
/// Cycles through a fixed list of states (index = seed mod size).
inline FreeStateSampler list_sampler(std::string name, std::vector<DensityMatrix> states,
                                     std::function<bool(const DensityMatrix&)> member = nullptr) {
  if (states.empty()) fail(ErrorKind::EmptySampler, "sampler '" + name + "' has no states");
  Dims dims = states.front().dims();
  auto shared = std::make_shared<std::vector<DensityMatrix>>(std::move(states));
  FreeStateSampler s{std::move(name), std::move(dims),
                     [shared](std::uint64_t i) { return (*shared)[i % shared->size()]; },
                     member ? std::move(member) : [](const DensityMatrix&) { return true; }};
  s.indexed = true;
  return s;
}

// ---------------------------------------------------------------------------
// Sampled relative entropy of resource

struct OracleResult {
  double value = kInfinity;       // min over samples; +infinity if no sample has full support
  std::size_t best_index = 0;
  std::size_t samples = 0;
  std::size_t infinite = 0;       // samples violating the support condition
};

/// Sample i is drawn with seed derive_seed(seed, stream, i) (or index i for
/// indexed samplers), so the sample set for N is a prefix of the one for N' > N.
inline OracleResult sampled_relent_of_resource(const DensityMatrix& rho, const FreeStateSampler& sampler,
                                               std::size_t n, std::uint64_t seed, std::size_t threads = 0) {
  if (!sampler.draw) fail(ErrorKind::EmptySampler, "sampler '" + sampler.name + "' cannot draw states");
  if (n < 1) fail(ErrorKind::DomainError, "sample count must be >= 1");
  if (product(sampler.dims) != rho.dim()) fail(ErrorKind::DimMismatch, "sampler dimension does not match state");
  std::vector<double> values(n);
  parallel_for(n, threads ? threads : worker_count(), [&](std::size_t i) {
    const std::uint64_t s = sampler.indexed ? i : derive_seed(seed, 0x0AC1EULL, i);
    values[i] = relative_entropy(rho, sampler.draw(s));
  });
  OracleResult r;
  r.samples = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(values[i])) ++r.infinite;
    if (values[i] < r.value) {
      r.value = values[i];
      r.best_index = i;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Measures, free operations and the harnesses built on them

enum class ChannelKind { Identity, Discard, LocalUnitary, LocalDephasing };

struct IdentityChannel {};
/// Traces out the listed parties, leaving 1-dimensional placeholders so the
/// party count is unchanged.
struct DiscardChannel {
  std::vector<std::size_t> parties;
};
/// One unitary per party.
struct LocalUnitaryChannel {
  std::vector<Matrix> unitaries;
};
/// Dephasing of one party in the basis given by the columns of `basis`.
struct LocalDephasingChannel {
  std::size_t party = 0;
  Matrix basis;
};

using FreeOperation = std::variant<IdentityChannel, DiscardChannel, LocalUnitaryChannel, LocalDephasingChannel>;

inline ChannelKind channel_kind(const FreeOperation& op) {
  return static_cast<ChannelKind>(op.index());
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, const FreeOperation& op) {
  return std::visit(
      [&](const auto& ch) -> DensityMatrix {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, IdentityChannel>) {
          return rho;
        } else if constexpr (std::is_same_v<T, DiscardChannel>) {
          std::vector<std::size_t> keep;
          for (std::size_t k = 0; k < rho.parties(); ++k)
            if (std::find(ch.parties.begin(), ch.parties.end(), k) == ch.parties.end()) keep.push_back(k);
          Dims out_dims(rho.parties(), 1);
          for (auto k : keep) out_dims[k] = rho.dims()[k];
          if (keep.empty()) return DensityMatrix::from_trusted(Matrix::Ones(1, 1), out_dims);
          const DensityMatrix reduced = partial_trace(rho, keep);
          return DensityMatrix::from_trusted(reduced.matrix(), out_dims);
        } else if constexpr (std::is_same_v<T, LocalUnitaryChannel>) {
          if (ch.unitaries.size() != rho.parties()) fail(ErrorKind::NotFreeOperation, "need one unitary per party");
          Matrix u = Matrix::Ones(1, 1);
          for (std::size_t k = 0; k < ch.unitaries.size(); ++k) {
            const Matrix& uk = ch.unitaries[k];
            if (static_cast<std::size_t>(uk.rows()) != rho.dims()[k] || uk.rows() != uk.cols())
              fail(ErrorKind::NotFreeOperation, "local unitary has wrong size for party " + std::to_string(k));
            if (unitarity_defect(uk) > 1e-9) fail(ErrorKind::NotFreeOperation, "local operator is not unitary");
            u = kron(u, uk);
          }
          return apply_unitary(rho, u);
        } else {
          if (ch.party >= rho.parties()) fail(ErrorKind::NotFreeOperation, "dephasing party out of range");
          if (static_cast<std::size_t>(ch.basis.rows()) != rho.dims()[ch.party] || unitarity_defect(ch.basis) > 1e-9)
            fail(ErrorKind::NotFreeOperation, "dephasing basis is not an orthonormal basis of the party");
          const auto n = static_cast<Eigen::Index>(rho.dim());
          Matrix out = Matrix::Zero(n, n);
          for (Eigen::Index k = 0; k < ch.basis.cols(); ++k) {
            const Matrix proj = local_operator(rho.dims(), ch.party, ch.basis.col(k) * ch.basis.col(k).adjoint());
            out += proj * rho.matrix() * proj;
          }
          return DensityMatrix::from_trusted(std::move(out), rho.dims());
        }
      },
      op);
}

/// A resource measure together with the free operations it is monotone under.
struct Measure {
  std::string name;
  std::function<double(const DensityMatrix&)> evaluate;
  double tolerance = 0.0;
  std::vector<ChannelKind> free_kinds;
  std::vector<std::size_t> dephasable_parties;  // parties LocalDephasing may act on
};

inline Measure relent_discord_measure(DiscordVariant v, OptimizerConfig cfg = {}) {
  return {std::string("relent_discord_") + variant_name(v),
          [=](const DensityMatrix& r) { return relent_discord(r, v, cfg).value; },
          cfg.tolerance,
          {ChannelKind::Identity, ChannelKind::Discard, ChannelKind::LocalUnitary, ChannelKind::LocalDephasing},
          {0, 1}};
}

/// Measurement on B; monotone under operations on the unmeasured party A.
inline Measure mbqd_measure(OptimizerConfig cfg = {}) {
  return {"mbqd", [=](const DensityMatrix& r) { return measurement_discord(r, cfg).value; }, cfg.tolerance,
          {ChannelKind::Identity, ChannelKind::Discard, ChannelKind::LocalUnitary, ChannelKind::LocalDephasing},
          {0}};
}

/// Local channels on A or C cannot raise I(A:C|B); unitaries on B permute the Markov set.
inline Measure nonmarkovianity_measure(OptimizerConfig cfg = markov_default_config()) {
  return {"nonmarkovianity", [=](const DensityMatrix& r) { return relent_nonmarkovianity(r, cfg).value; },
          cfg.tolerance,
          {ChannelKind::Identity, ChannelKind::Discard, ChannelKind::LocalUnitary, ChannelKind::LocalDephasing},
          {0, 2}};
}

struct MonotonicityReport {
  double before = 0.0;
  double after = 0.0;
  double slack = 0.0;
  bool holds = true;
  double margin() const { return before + slack - after; }
};

inline MonotonicityReport monotonicity_check(const Measure& measure, const DensityMatrix& rho, const FreeOperation& op) {
  const ChannelKind kind = channel_kind(op);
  if (std::find(measure.free_kinds.begin(), measure.free_kinds.end(), kind) == measure.free_kinds.end())
    fail(ErrorKind::NotFreeOperation, "operation is not free for " + measure.name);
  if (const auto* d = std::get_if<LocalDephasingChannel>(&op)) {
    const auto& ok = measure.dephasable_parties;
    if (std::find(ok.begin(), ok.end(), d->party) == ok.end())
      fail(ErrorKind::NotFreeOperation, "dephasing party " + std::to_string(d->party) + " is not free for " + measure.name);
  }
  MonotonicityReport rep;
  rep.before = measure.evaluate(rho);
  rep.after = measure.evaluate(apply_channel(rho, op));
  rep.slack = 2.0 * measure.tolerance;
  rep.holds = rep.after <= rep.before + rep.slack;
  return rep;
}

inline constexpr std::size_t kMaxRegularizedDim = 256;

/// (n, R(rho^{(x)n}) / n) for n = 1..n_max, copies of each party grouped.
inline std::vector<std::pair<std::size_t, double>> regularized_estimate(
    const std::function<double(const DensityMatrix&)>& measure, const DensityMatrix& rho, std::size_t n_max) {
  if (n_max < 1) fail(ErrorKind::DomainError, "n_max must be >= 1");
  double total = 1.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    total *= static_cast<double>(rho.dim());
    if (total > static_cast<double>(kMaxRegularizedDim))
      fail(ErrorKind::DimensionBlowup, "dimension " + std::to_string(rho.dim()) + "^" + std::to_string(n_max) + " exceeds 256");
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t n = 1; n <= n_max; ++n) out.emplace_back(n, measure(tensor_power(rho, n)) / static_cast<double>(n));
  return out;
}

/// Largest |R(rho^{(x)n})/n - R(rho)| in a regularization sequence; zero for
/// a weakly additive measure.
inline double weak_additivity_gap(const std::vector<std::pair<std::size_t, double>>& seq) {
  double gap = 0.0;
  for (const auto& [n, v] : seq) gap = std::max(gap, std::abs(v - seq.front().second));
  return gap;
}

}  // namespace qrt
