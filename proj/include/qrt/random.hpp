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

#include <cstdint>
#include <random>
#include <vector>

#include "qrt/state.hpp"

namespace qrt {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent per-task seed: the same (seed, stream, index) always maps to
/// the same value regardless of which worker evaluates the task.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// Haar unitary: QR of a complex Ginibre matrix with the R-diagonal phases
/// folded back into Q.
inline Matrix random_unitary(Rng& rng, std::size_t dim) {
  if (dim == 0) fail(ErrorKind::DomainError, "unitary dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : Complex(1.0, 0.0));
  }
  return q;
}

inline Matrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(rng, dim);
}

/// Uniform point on the probability simplex of size n.
inline std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

/// U diag(w_1..w_rank, 0, ...) U^dagger with Dirichlet(1,...,1) weights and Haar U.
inline DensityMatrix random_state(Rng& rng, Dims dims, std::size_t rank) {
  const std::size_t dim = product(dims);
  if (rank < 1 || rank > dim) fail(ErrorKind::DomainError, "rank must satisfy 1 <= rank <= dim");
  const Matrix u = random_unitary(rng, dim);
  const std::vector<double> w = random_simplex(rng, rank);
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < rank; ++k) {
    const auto col = u.col(static_cast<Eigen::Index>(k));
    m.noalias() += w[k] * (col * col.adjoint());
  }
  return DensityMatrix::from_trusted(std::move(m), std::move(dims));
}

inline DensityMatrix random_state(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(rng, Dims{dim}, rank);
}

inline DensityMatrix random_state(Dims dims, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(rng, std::move(dims), rank);
}

/// Full-rank-or-not mixture used by property tests: rank drawn uniformly.
inline DensityMatrix random_state_any_rank(Rng& rng, Dims dims) {
  const std::size_t dim = product(dims);
  std::uniform_int_distribution<std::size_t> pick(1, dim);
  const std::size_t rank = pick(rng);
  return random_state(rng, std::move(dims), rank);
}

}  // namespace qrt
