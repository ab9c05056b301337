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
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qrt/entropy.hpp"
#include "qrt/random.hpp"
#include "qrt/report.hpp"
#include "qrt/unitary.hpp"

namespace qrt {

/// One direct summand H_{b^L} (x) H_{b^R} of the B system.
struct Block {
  std::size_t left = 1, right = 1;
  std::size_t size() const { return left * right; }
  bool operator==(const Block&) const = default;
};

using BlockStructure = std::vector<Block>;

/// Block sizes plus the unitary V on B whose columns, taken block by block
/// (left index major), span the summands.
struct DecompositionStructure {
  BlockStructure blocks;
  RealVector unitary_params;

  std::size_t dim_b() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.size();
    return d;
  }
  Matrix unitary() const { return unitary_from_params(unitary_params, dim_b()); }
};

inline std::string structure_string(const BlockStructure& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(s[i].left) + "," + std::to_string(s[i].right) + ")";
  }
  return out + "}";
}

inline constexpr std::size_t kMaxMarkovDimB = 6;

/// All multisets of (left, right) factor pairs whose sizes add up to dB.
/// Blocks inside a structure and the structures themselves are ordered by
/// size descending, then left dimension descending.
inline std::vector<BlockStructure> enumerate_structures(std::size_t dB) {
  if (dB < 1) fail(ErrorKind::DomainError, "dB must be positive");
  if (dB > kMaxMarkovDimB) fail(ErrorKind::DimTooLarge, "dB = " + std::to_string(dB) + " exceeds 6");

  std::vector<Block> kinds;
  for (std::size_t size = dB; size >= 1; --size)
    for (std::size_t left = size; left >= 1; --left)
      if (size % left == 0) kinds.push_back({left, size / left});

  std::vector<BlockStructure> out;
  std::vector<std::size_t> stack;
  // non-decreasing kind indices == canonical non-increasing blocks
  auto recurse = [&](auto&& self, std::size_t first, std::size_t remaining) -> void {
    if (remaining == 0) {
      BlockStructure s;
      for (auto k : stack) s.push_back(kinds[k]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t k = first; k < kinds.size(); ++k) {
      if (kinds[k].size() > remaining) continue;
      stack.push_back(k);
      self(self, k, remaining - kinds[k].size());
      stack.pop_back();
    }
  };
  recurse(recurse, 0, dB);
  return out;
}

/// q_j and the normalized marginals omega^{A b^L}_j, omega^{b^R C}_j. Blocks
/// with q_j < 1e-12 are dropped (their entries in `kept` are false).
struct MarkovObjectiveParts {
  std::vector<double> q;
  std::vector<Matrix> omega_left;
  std::vector<Matrix> omega_right;
  std::vector<bool> kept;
};

namespace detail {

inline void require_tripartite(const DensityMatrix& rho) {
  if (rho.parties() != 3) fail(ErrorKind::DimMismatch, "expected dims [dA,dB,dC], got " + dims_string(rho.dims()));
}

inline void check_structure(const DensityMatrix& rho, const BlockStructure& blocks) {
  std::size_t d = 0;
  for (const auto& b : blocks) {
    if (b.left < 1 || b.right < 1) fail(ErrorKind::DomainError, "block factors must be >= 1");
    d += b.size();
  }
  if (d != rho.dims()[1]) fail(ErrorKind::DimMismatch, "block sizes sum to " + std::to_string(d) + ", dB is " + std::to_string(rho.dims()[1]));
}

}  // namespace detail

inline MarkovObjectiveParts markov_parts(const DensityMatrix& rho, const BlockStructure& blocks, const Matrix& v) {
  detail::require_tripartite(rho);
  detail::check_structure(rho, blocks);
  const std::size_t dA = rho.dims()[0], dB = rho.dims()[1], dC = rho.dims()[2];
  const auto a = static_cast<Eigen::Index>(dA), c = static_cast<Eigen::Index>(dC);
  MarkovObjectiveParts parts;
  Eigen::Index offset = 0;
  for (const auto& blk : blocks) {
    const auto n = static_cast<Eigen::Index>(blk.size());
    const Matrix w = kron(kron(Matrix::Identity(a, a), v.middleCols(offset, n)), Matrix::Identity(c, c));
    offset += n;
    const Matrix y = w.adjoint() * rho.matrix() * w;
    const double q = y.trace().real();
    parts.q.push_back(q);
    parts.kept.push_back(q >= 1e-12);
    if (q < 1e-12) {
      parts.omega_left.emplace_back();
      parts.omega_right.emplace_back();
      continue;
    }
    const Dims d4{dA, blk.left, blk.right, dC};
    parts.omega_left.push_back(partial_trace_matrix(y, d4, {0, 1}) / q);
    parts.omega_right.push_back(partial_trace_matrix(y, d4, {2, 3}) / q);
  }
  (void)dB;
  return parts;
}

/// S(+_j q_j omega^{A b^L}_j (x) omega^{b^R C}_j).
inline double assembled_entropy(const MarkovObjectiveParts& parts) {
  double s = 0.0;
  for (std::size_t j = 0; j < parts.q.size(); ++j) {
    if (!parts.kept[j]) continue;
    const double q = parts.q[j];
    s += xlog2x_neg(q) + q * (matrix_entropy(parts.omega_left[j]) + matrix_entropy(parts.omega_right[j]));
  }
  return s;
}

/// The Markov state built from `parts`, mapped back through V onto A (x) B (x) C.
inline DensityMatrix assemble_markov_state(const MarkovObjectiveParts& parts, const BlockStructure& blocks,
                                           const Matrix& v, const Dims& dims) {
  const std::size_t dA = dims[0], dB = dims[1], dC = dims[2];
  const auto D = static_cast<Eigen::Index>(dA * dB * dC);
  Matrix y = Matrix::Zero(D, D);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const std::size_t l = blocks[j].left, r = blocks[j].right;
    if (parts.kept[j]) {
      const Matrix x = parts.q[j] * kron(parts.omega_left[j], parts.omega_right[j]);
      const Dims local{dA, l, r, dC};
      const std::size_t n = dA * l * r * dC;
      for (std::size_t s = 0; s < n; ++s) {
        const auto ds = detail::digits(s, local);
        const std::size_t fs = (ds[0] * dB + offset + ds[1] * r + ds[2]) * dC + ds[3];
        for (std::size_t t = 0; t < n; ++t) {
          const auto dt = detail::digits(t, local);
          const std::size_t ft = (dt[0] * dB + offset + dt[1] * r + dt[2]) * dC + dt[3];
          y(static_cast<Eigen::Index>(fs), static_cast<Eigen::Index>(ft)) =
              x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
        }
      }
    }
    offset += l * r;
  }
  const Matrix w = kron(kron(Matrix::Identity(static_cast<Eigen::Index>(dA), static_cast<Eigen::Index>(dA)), v),
                        Matrix::Identity(static_cast<Eigen::Index>(dC), static_cast<Eigen::Index>(dC)));
  return DensityMatrix::from_trusted(w * y * w.adjoint(), dims);
}

inline double markov_objective(const DensityMatrix& rho, const DecompositionStructure& s) {
  detail::require_tripartite(rho);
  detail::check_structure(rho, s.blocks);
  return assembled_entropy(markov_parts(rho, s.blocks, s.unitary())) - von_neumann_entropy(rho);
}

inline DensityMatrix assemble_markov_state(const DensityMatrix& rho, const DecompositionStructure& s) {
  const Matrix v = s.unitary();
  return assemble_markov_state(markov_parts(rho, s.blocks, v), s.blocks, v, rho.dims());
}

inline bool is_markov(const DensityMatrix& rho, double tol = 1e-8) {
  return conditional_mutual_information(rho) <= tol;
}

inline OptimizerConfig markov_default_config() {
  OptimizerConfig cfg;
  cfg.restarts = 16;
  return cfg;
}

/// Relative entropy of non-Markovianity as the minimum of markov_objective
/// over every block structure of B and over V. `detail` names the winning
/// structure; `argmin` holds its unitary parameters.
inline MeasureReport relent_nonmarkovianity(const DensityMatrix& rho, const OptimizerConfig& cfg = markov_default_config()) {
  detail::require_tripartite(rho);
  check_config(cfg);
  const std::size_t dB = rho.dims()[1];
  const auto structures = enumerate_structures(dB);
  const double s_rho = von_neumann_entropy(rho);

  MeasureReport best;
  best.value = std::numeric_limits<double>::infinity();
  bool budget = false;
  for (std::size_t si = 0; si < structures.size(); ++si) {
    const auto& blocks = structures[si];
    auto objective = [&](const RealVector& x) {
      return assembled_entropy(markov_parts(rho, blocks, unitary_from_params(x, dB))) - s_rho;
    };
    MultiStartResult r;
    if (blocks.size() == 1) {
      // a single summand spans B; V only relabels within it
      r.argmin = RealVector::Zero(static_cast<Eigen::Index>(dB * dB));
      r.value = objective(r.argmin);
      r.restarts_used = 1;
    } else {
      auto start = [&](std::size_t i, Rng& rng) {
        return i == 0 ? RealVector(RealVector::Zero(static_cast<Eigen::Index>(dB * dB)))
                      : params_from_unitary(random_unitary(rng, dB));
      };
      r = multistart_minimize(objective, start, cfg, 0x4A11ULL + si);
    }
    if (r.value < best.value - cfg.ftol) {
      best = make_report(r, cfg);
      best.detail = structure_string(blocks);
      budget = r.budget_exceeded;
    }
  }
  best.restarts_used = cfg.restarts;
  best.budget_exceeded = budget;
  return best;
}

/// Random Markov state: random structure, V, block weights and block marginals.
inline DensityMatrix random_markov_state(Rng& rng, const Dims& dims, BlockStructure* structure_out = nullptr) {
  if (dims.size() != 3) fail(ErrorKind::DimMismatch, "Markov states need dims [dA,dB,dC]");
  const auto structures = enumerate_structures(dims[1]);
  std::uniform_int_distribution<std::size_t> pick(0, structures.size() - 1);
  const BlockStructure blocks = structures[pick(rng)];
  const Matrix v = random_unitary(rng, dims[1]);
  MarkovObjectiveParts parts;
  parts.q = random_simplex(rng, blocks.size());
  for (const auto& b : blocks) {
    parts.kept.push_back(true);
    const std::size_t dl = dims[0] * b.left, dr = b.right * dims[2];
    parts.omega_left.push_back(random_state(rng, Dims{dl}, std::uniform_int_distribution<std::size_t>(1, dl)(rng)).matrix());
    parts.omega_right.push_back(random_state(rng, Dims{dr}, std::uniform_int_distribution<std::size_t>(1, dr)(rng)).matrix());
  }
  if (structure_out) *structure_out = blocks;
  return assemble_markov_state(parts, blocks, v, dims);
}

/// 2 (||rho-sigma||_1 log2 D + h2(||rho-sigma||_1)), valid for T <= 1/3.
inline double markov_continuity_rhs(double trace_dist, std::size_t dim) {
  const double norm1 = 2.0 * trace_dist;
  if (norm1 > 1.0) return std::numeric_limits<double>::quiet_NaN();
  return 2.0 * (norm1 * std::log2(static_cast<double>(dim)) + h2(norm1));
}

inline BoundCheck markov_continuity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                          const OptimizerConfig& cfg = markov_default_config()) {
  check_same_dim(rho, sigma);
  BoundCheck c;
  c.trace_distance = trace_distance(rho, sigma);
  c.assumption_met = c.trace_distance <= 1.0 / 3.0;
  c.rhs = markov_continuity_rhs(c.trace_distance, rho.dim());
  c.lhs = std::abs(relent_nonmarkovianity(rho, cfg).value - relent_nonmarkovianity(sigma, cfg).value);
  c.slack = 2.0 * cfg.tolerance;
  c.status = c.assumption_met ? classify_bound(c.lhs, c.rhs, c.slack) : BoundStatus::NotAsserted;
  return c;
}

}  // namespace qrt
