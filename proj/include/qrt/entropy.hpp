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
#include <limits>
#include <span>
#include <string>

#include "qrt/state.hpp"

namespace qrt {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// -x log2 x with 0 log 0 := 0; negative roundoff is treated as 0.
inline double xlog2x_neg(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

inline double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += xlog2x_neg(x);
  return s;
}

inline double shannon_entropy(const RealVector& p) {
  return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

/// Entropy (bits) of a Hermitian positive operator given as a raw matrix.
inline double matrix_entropy(const Matrix& m) {
  if (m.rows() == 1) return xlog2x_neg(m(0, 0).real());
  if (m.rows() == 2) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return xlog2x_neg(mid + rad) + xlog2x_neg(mid - rad);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return shannon_entropy(solver.eigenvalues());
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return matrix_entropy(rho.matrix()); }

inline double h2(double x) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::DomainError, "h2 needs x in [0,1], got " + std::to_string(x));
  return xlog2x_neg(x) + xlog2x_neg(1.0 - x);
}

/// (x+1) log2(x+1) - x log2 x: entropy of a thermal state with mean photon number x.
inline double g2(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::DomainError, "g2 needs x >= 0, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

inline double fannes_audenaert_bound(double eps, std::size_t dim) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(ErrorKind::DomainError, "epsilon must lie in [0,1]");
  if (dim < 2) fail(ErrorKind::DomainError, "dimension must be at least 2");
  return eps * std::log2(static_cast<double>(dim)) + h2(eps);
}

inline void check_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    fail(ErrorKind::DimMismatch, "state dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

/// Half the trace norm of the difference.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dim(a, b);
  Matrix diff = a.matrix() - b.matrix();
  diff = (diff + diff.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return std::min(1.0, 0.5 * solver.eigenvalues().cwiseAbs().sum());
}

/// D(rho||sigma) in bits, evaluated in the eigenbasis of sigma. Returns
/// +infinity when an eigenvector of rho carrying weight above the support
/// tolerance leaks outside supp(sigma).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const Spectrum s = sigma.spectrum();
  const Spectrum r = rho.spectrum();
  const Eigen::Index n = s.values.size();

  Eigen::Index support = 0;
  while (support < n && s.values(support) > tol::support) ++support;

  if (support < n) {
    const Matrix outside = s.vectors.rightCols(n - support);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (r.values(i) <= tol::support) continue;
      const double leak = (outside.adjoint() * r.vectors.col(i)).squaredNorm();
      if (leak > tol::support) return kInfinity;
    }
  }

  const Matrix rotated = s.vectors.adjoint() * rho.matrix() * s.vectors;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < support; ++k) cross -= rotated(k, k).real() * std::log2(s.values(k));
  return cross - shannon_entropy(r.values);
}

inline double mutual_information(const DensityMatrix& rho_ab) {
  if (rho_ab.parties() != 2) fail(ErrorKind::DimMismatch, "mutual information needs a bipartite state");
  return von_neumann_entropy(partial_trace(rho_ab, {0})) + von_neumann_entropy(partial_trace(rho_ab, {1})) -
         von_neumann_entropy(rho_ab);
}

/// I(A:C|B) = S(AB) + S(BC) - S(B) - S(ABC).
inline double conditional_mutual_information(const DensityMatrix& rho) {
  if (rho.parties() != 3)
    fail(ErrorKind::DimMismatch, "conditional mutual information needs dims [dA,dB,dC], got " + dims_string(rho.dims()));
  return von_neumann_entropy(partial_trace(rho, {0, 1})) + von_neumann_entropy(partial_trace(rho, {1, 2})) -
         von_neumann_entropy(partial_trace(rho, {1})) - von_neumann_entropy(rho);
}

}  // namespace qrt
