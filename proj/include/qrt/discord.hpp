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

#include <cmath>
#include <string>
#include <vector>

#include "qrt/entropy.hpp"
#include "qrt/random.hpp"
#include "qrt/report.hpp"
#include "qrt/unitary.hpp"

namespace qrt {

// Discord-free families: classical-classical, quantum-classical (classical on
// B) and classical-quantum (classical on A).
enum class DiscordVariant { CC, QC, CQ };

inline const char* variant_name(DiscordVariant v) {
  switch (v) {
    case DiscordVariant::CC: return "cc";
    case DiscordVariant::QC: return "qc";
    case DiscordVariant::CQ: return "cq";
  }
  return "?";
}

/// Which side is measured in measurement-based discord.
enum class MeasuredSide { OnB, OnA };

/// Local orthonormal bases {|a_k>} and {|b_k>} as the columns of
/// U_A = exp(A(thetaA)) and U_B = exp(A(thetaB)).
struct LocalBasisPair {
  std::size_t dA = 0, dB = 0;
  RealVector thetaA, thetaB;

  Matrix unitary_a() const { return unitary_from_params(thetaA, dA); }
  Matrix unitary_b() const { return unitary_from_params(thetaB, dB); }

  static LocalBasisPair computational(std::size_t dA, std::size_t dB) {
    return {dA, dB, RealVector::Zero(static_cast<Eigen::Index>(dA * dA)),
            RealVector::Zero(static_cast<Eigen::Index>(dB * dB))};
  }
  static LocalBasisPair from_unitaries(const Matrix& ua, const Matrix& ub) {
    return {static_cast<std::size_t>(ua.rows()), static_cast<std::size_t>(ub.rows()), params_from_unitary(ua),
            params_from_unitary(ub)};
  }
  static LocalBasisPair random(Rng& rng, std::size_t dA, std::size_t dB) {
    const Matrix ua = random_unitary(rng, dA);
    const Matrix ub = random_unitary(rng, dB);
    return from_unitaries(ua, ub);
  }
};

/// Measurement operators {M_k} on one party with sum_k M_k^dagger M_k = I.
struct Measurement {
  std::vector<Matrix> operators;

  /// Rank-1 projective measurement onto the columns of `u`.
  static Measurement projective(const Matrix& u) {
    Measurement m;
    for (Eigen::Index k = 0; k < u.cols(); ++k) m.operators.push_back(u.col(k) * u.col(k).adjoint());
    return m;
  }
};

inline double completeness_defect(const Measurement& m, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& op : m.operators) {
    if (op.cols() != n) fail(ErrorKind::BadMeasurement, "measurement operator has wrong input dimension");
    sum += op.adjoint() * op;
  }
  return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

namespace detail {

inline void require_bipartite(const DensityMatrix& rho) {
  if (rho.parties() != 2) fail(ErrorKind::DimMismatch, "expected a bipartite state, got dims " + dims_string(rho.dims()));
}

// Diagonal of (U_A (x) U_B)^dagger rho (U_A (x) U_B).
inline RealVector product_basis_probabilities(const Matrix& rho, const Matrix& ua, const Matrix& ub) {
  const Matrix w = kron(ua, ub);
  const Matrix rw = rho * w;
  RealVector p(w.cols());
  for (Eigen::Index k = 0; k < w.cols(); ++k) p(k) = std::max(0.0, (w.col(k).adjoint() * rw.col(k))(0, 0).real());
  return p;
}

// (I (x) U_B)^dagger rho (I (x) U_B), then the dA x dA diagonal blocks in B.
inline std::vector<Matrix> b_conditional_blocks(const Matrix& rho, std::size_t dA, const Matrix& ub) {
  const auto a = static_cast<Eigen::Index>(dA);
  const Eigen::Index b = ub.rows();
  const Matrix w = kron(Matrix::Identity(a, a), ub);
  const Matrix r = w.adjoint() * rho * w;
  std::vector<Matrix> blocks(static_cast<std::size_t>(b), Matrix(a, a));
  for (Eigen::Index k = 0; k < b; ++k)
    for (Eigen::Index i = 0; i < a; ++i)
      for (Eigen::Index j = 0; j < a; ++j) blocks[static_cast<std::size_t>(k)](i, j) = r(i * b + k, j * b + k);
  return blocks;
}

inline DensityMatrix swap_parties(const DensityMatrix& rho) { return permute_subsystems(rho, {1, 0}); }

// Sum_k p_k S(A|k) from unnormalized conditional blocks X_k (p_k = tr X_k).
inline double weighted_conditional_entropy(const std::vector<Matrix>& blocks) {
  double s = 0.0;
  for (const auto& x : blocks) {
    const double p = x.trace().real();
    if (p <= 1e-15) continue;
    s += matrix_entropy(x) + p * std::log2(p);
  }
  return s;
}

inline double raw_block_entropy(const std::vector<Matrix>& blocks) {
  double s = 0.0;
  for (const auto& x : blocks) s += matrix_entropy(x);
  return s;
}

}  // namespace detail

inline void check_basis(const DensityMatrix& rho, const LocalBasisPair& basis) {
  detail::require_bipartite(rho);
  if (rho.dims()[0] != basis.dA || rho.dims()[1] != basis.dB)
    fail(ErrorKind::DimMismatch, "basis dimensions do not match state dims " + dims_string(rho.dims()));
}

/// Dephasing in the full product basis {|a_i b_j>}: keeps the dA*dB diagonal
/// weights, so the result is a normalized classical-classical state.
inline DensityMatrix dephase_cc(const DensityMatrix& rho, const LocalBasisPair& basis) {
  check_basis(rho, basis);
  const Matrix w = kron(basis.unitary_a(), basis.unitary_b());
  const RealVector p = detail::product_basis_probabilities(rho.matrix(), basis.unitary_a(), basis.unitary_b());
  return DensityMatrix::from_trusted(w * p.cast<Complex>().asDiagonal() * w.adjoint(), rho.dims());
}

/// sum_k (I (x) <b_k|) rho (I (x) |b_k>) (x) |b_k><b_k|.
inline DensityMatrix dephase_qc(const DensityMatrix& rho, const Matrix& ub) {
  detail::require_bipartite(rho);
  if (static_cast<std::size_t>(ub.rows()) != rho.dims()[1]) fail(ErrorKind::DimMismatch, "basis on B has wrong dimension");
  const std::size_t dA = rho.dims()[0], dB = rho.dims()[1];
  const auto blocks = detail::b_conditional_blocks(rho.matrix(), dA, ub);
  const auto a = static_cast<Eigen::Index>(dA), b = static_cast<Eigen::Index>(dB);
  Matrix rotated = Matrix::Zero(a * b, a * b);
  for (Eigen::Index k = 0; k < b; ++k)
    for (Eigen::Index i = 0; i < a; ++i)
      for (Eigen::Index j = 0; j < a; ++j) rotated(i * b + k, j * b + k) = blocks[static_cast<std::size_t>(k)](i, j);
  const Matrix w = kron(Matrix::Identity(a, a), ub);
  return DensityMatrix::from_trusted(w * rotated * w.adjoint(), rho.dims());
}

inline DensityMatrix dephase_qc(const DensityMatrix& rho, const LocalBasisPair& basis) {
  check_basis(rho, basis);
  return dephase_qc(rho, basis.unitary_b());
}

/// Classical on A: the QC dephasing with the parties exchanged.
inline DensityMatrix dephase_cq(const DensityMatrix& rho, const LocalBasisPair& basis) {
  check_basis(rho, basis);
  return detail::swap_parties(dephase_qc(detail::swap_parties(rho), basis.unitary_a()));
}

inline DensityMatrix dephase(const DensityMatrix& rho, const LocalBasisPair& basis, DiscordVariant v) {
  switch (v) {
    case DiscordVariant::CC: return dephase_cc(rho, basis);
    case DiscordVariant::QC: return dephase_qc(rho, basis);
    case DiscordVariant::CQ: return dephase_cq(rho, basis);
  }
  fail(ErrorKind::DomainError, "unknown discord variant");
}

/// Weight the literal single-index reading sum_k <a_k b_k|rho|a_k b_k> leaves
/// out: 1 minus the paired-diagonal mass. Zero only when rho lives on the
/// paired product vectors. Experimental; the measures use the full grid.
inline double paired_cc_defect(const DensityMatrix& rho, const LocalBasisPair& basis) {
  check_basis(rho, basis);
  const RealVector p = detail::product_basis_probabilities(rho.matrix(), basis.unitary_a(), basis.unitary_b());
  const auto b = static_cast<Eigen::Index>(basis.dB);
  const auto m = static_cast<Eigen::Index>(std::min(basis.dA, basis.dB));
  double paired = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) paired += p(k * b + k);
  return 1.0 - paired;
}

/// Entropy of the dephased state, S(chi). The objective is S(chi) - S(rho).
inline double dephased_entropy(const Matrix& rho, std::size_t dA, const Matrix& ua, const Matrix& ub,
                               DiscordVariant v) {
  switch (v) {
    case DiscordVariant::CC: return shannon_entropy(detail::product_basis_probabilities(rho, ua, ub));
    case DiscordVariant::QC: return detail::raw_block_entropy(detail::b_conditional_blocks(rho, dA, ub));
    case DiscordVariant::CQ: break;
  }
  fail(ErrorKind::DomainError, "CQ entropy must be evaluated on the swapped state");
}

inline double discord_objective(const DensityMatrix& rho, const LocalBasisPair& basis, DiscordVariant v) {
  check_basis(rho, basis);
  const double s_rho = von_neumann_entropy(rho);
  if (v == DiscordVariant::CQ) {
    const DensityMatrix swapped = detail::swap_parties(rho);
    return dephased_entropy(swapped.matrix(), basis.dB, basis.unitary_b(), basis.unitary_a(), DiscordVariant::QC) -
           s_rho;
  }
  return dephased_entropy(rho.matrix(), basis.dA, basis.unitary_a(), basis.unitary_b(), v) - s_rho;
}

namespace detail {

// Restart 0 starts from the computational basis, the rest from Haar bases.
inline RealVector basis_start(std::size_t restart, Rng& rng, const std::vector<std::size_t>& dims) {
  std::size_t total = 0;
  for (auto d : dims) total += d * d;
  RealVector x(static_cast<Eigen::Index>(total));
  Eigen::Index off = 0;
  for (auto d : dims) {
    const auto n = static_cast<Eigen::Index>(d * d);
    x.segment(off, n) = restart == 0 ? RealVector(RealVector::Zero(n)) : params_from_unitary(random_unitary(rng, d));
    off += n;
  }
  return x;
}

}  // namespace detail

/// Relative entropy of discord: min over local bases of S(chi) - S(rho).
/// The result is an upper bound on the true minimum; argmin holds thetaA then
/// thetaB (CC), thetaB (QC) or thetaA (CQ).
inline MeasureReport relent_discord(const DensityMatrix& rho, DiscordVariant v, const OptimizerConfig& cfg = {}) {
  detail::require_bipartite(rho);
  check_config(cfg);
  const bool cq = v == DiscordVariant::CQ;
  const DensityMatrix work = cq ? detail::swap_parties(rho) : rho;
  const std::size_t dA = work.dims()[0], dB = work.dims()[1];
  const double s_rho = von_neumann_entropy(rho);
  const Matrix& m = work.matrix();

  std::vector<std::size_t> param_dims;
  if (v == DiscordVariant::CC) param_dims = {dA, dB};
  else param_dims = {dB};

  auto objective = [&](const RealVector& x) {
    if (v == DiscordVariant::CC) {
      const auto na = static_cast<Eigen::Index>(dA * dA);
      const Matrix ua = unitary_from_params(std::span<const double>(x.data(), dA * dA), dA);
      const Matrix ub = unitary_from_params(std::span<const double>(x.data() + na, dB * dB), dB);
      return dephased_entropy(m, dA, ua, ub, DiscordVariant::CC) - s_rho;
    }
    const Matrix ub = unitary_from_params(x, dB);
    return dephased_entropy(m, dA, Matrix(), ub, DiscordVariant::QC) - s_rho;
  };
  auto start = [&](std::size_t i, Rng& rng) { return detail::basis_start(i, rng, param_dims); };
  const auto result = multistart_minimize(objective, start, cfg, 0xD15C0ULL + static_cast<std::uint64_t>(v));
  MeasureReport rep = make_report(result, cfg);
  rep.detail = variant_name(v);
  return rep;
}

/// sum_k p_k S(rho_A|k) for outcome operators acting on B.
inline double measurement_conditional_entropy(const DensityMatrix& rho, const Measurement& meas) {
  detail::require_bipartite(rho);
  const std::size_t dA = rho.dims()[0], dB = rho.dims()[1];
  if (meas.operators.empty()) fail(ErrorKind::BadMeasurement, "measurement has no outcomes");
  const double defect = completeness_defect(meas, dB);
  if (defect > 1e-9) fail(ErrorKind::BadMeasurement, "sum M_k^dagger M_k deviates from identity by " + std::to_string(defect));
  const auto a = static_cast<Eigen::Index>(dA);
  std::vector<Matrix> blocks;
  for (const auto& op : meas.operators) {
    const Matrix k = kron(Matrix::Identity(a, a), op);
    const Matrix post = k * rho.matrix() * k.adjoint();
    blocks.push_back(partial_trace_matrix(post, {dA, static_cast<std::size_t>(op.rows())}, {0}));
  }
  return detail::weighted_conditional_entropy(blocks);
}

struct MbqdOptions {
  MeasuredSide side = MeasuredSide::OnB;
  bool povm = false;  // rank-1 POVMs with d^2 outcomes (Naimark isometry) instead of projective
};

/// Rank-1 POVM Kraus vectors from the first d columns of an n x n unitary
/// (n = d^2): rows of the isometry give E_k = |v_k><v_k|.
inline Measurement povm_from_unitary(const Matrix& u, std::size_t d) {
  Measurement m;
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    Matrix op = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    op.row(0) = u.row(k).head(static_cast<Eigen::Index>(d));
    m.operators.push_back(op);
  }
  return m;
}

/// Measurement-based discord D = I(A:B) - J(A|B) = S(B) - S(AB) + min_M sum_k p_k S(A|k).
inline MeasureReport measurement_discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                                         const MbqdOptions& opts = {}) {
  detail::require_bipartite(rho);
  check_config(cfg);
  const DensityMatrix work = opts.side == MeasuredSide::OnA ? detail::swap_parties(rho) : rho;
  const std::size_t dA = work.dims()[0], dB = work.dims()[1];
  const double base = von_neumann_entropy(partial_trace(work, {1})) - von_neumann_entropy(work);
  const Matrix& m = work.matrix();
  const std::size_t n = opts.povm ? dB * dB : dB;

  auto objective = [&](const RealVector& x) {
    const Matrix u = unitary_from_params(x, n);
    if (!opts.povm) return base + detail::weighted_conditional_entropy(detail::b_conditional_blocks(m, dA, u));
    // <v_k| on B for each isometry row
    const auto a = static_cast<Eigen::Index>(dA), b = static_cast<Eigen::Index>(dB);
    std::vector<Matrix> blocks;
    blocks.reserve(n);
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
      const Eigen::RowVectorXcd v = u.row(k).head(b);
      Matrix x_k = Matrix::Zero(a, a);
      for (Eigen::Index i = 0; i < a; ++i)
        for (Eigen::Index j = 0; j < a; ++j) {
          Complex acc{0.0, 0.0};
          for (Eigen::Index s = 0; s < b; ++s)
            for (Eigen::Index t = 0; t < b; ++t) acc += v(s) * m(i * b + s, j * b + t) * std::conj(v(t));
          x_k(i, j) = acc;
        }
      blocks.push_back(std::move(x_k));
    }
    return base + detail::weighted_conditional_entropy(blocks);
  };
  auto start = [&](std::size_t i, Rng& rng) { return detail::basis_start(i, rng, {n}); };
  const auto result = multistart_minimize(objective, start, cfg, 0x3B9DULL + (opts.povm ? 1 : 0));
  MeasureReport rep = make_report(result, cfg);
  rep.detail = opts.side == MeasuredSide::OnA ? "mbqd:onA" : "mbqd:onB";
  if (opts.povm) rep.detail += ":povm";
  return rep;
}

/// Continuity bound for the relative entropy of discord:
/// ||rho-sigma||_1 log2 D + 2 h2(||rho-sigma||_1 / 2).
inline double discord_continuity_rhs(double trace_dist, std::size_t dim) {
  const double norm1 = 2.0 * trace_dist;
  return norm1 * std::log2(static_cast<double>(dim)) + 2.0 * h2(trace_dist);
}

/// Measurement-based discord: 2 ||rho-sigma||_1 log2 D + 4 h2(||rho-sigma||_1 / 2).
inline double mbqd_continuity_rhs(double trace_dist, std::size_t dim) {
  const double norm1 = 2.0 * trace_dist;
  return 2.0 * norm1 * std::log2(static_cast<double>(dim)) + 4.0 * h2(trace_dist);
}

inline BoundCheck discord_continuity_check(const DensityMatrix& rho, const DensityMatrix& sigma, DiscordVariant v,
                                           const OptimizerConfig& cfg = {}) {
  check_same_dim(rho, sigma);
  BoundCheck c;
  c.trace_distance = trace_distance(rho, sigma);
  c.rhs = discord_continuity_rhs(c.trace_distance, rho.dim());
  c.lhs = std::abs(relent_discord(rho, v, cfg).value - relent_discord(sigma, v, cfg).value);
  c.slack = 2.0 * cfg.tolerance;
  c.status = classify_bound(c.lhs, c.rhs, c.slack);
  return c;
}

inline BoundCheck mbqd_continuity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const OptimizerConfig& cfg = {}, const MbqdOptions& opts = {}) {
  check_same_dim(rho, sigma);
  BoundCheck c;
  c.trace_distance = trace_distance(rho, sigma);
  c.rhs = mbqd_continuity_rhs(c.trace_distance, rho.dim());
  c.lhs = std::abs(measurement_discord(rho, cfg, opts).value - measurement_discord(sigma, cfg, opts).value);
  c.slack = 2.0 * cfg.tolerance;
  c.status = classify_bound(c.lhs, c.rhs, c.slack);
  return c;
}

}  // namespace qrt
