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

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qrt/error.hpp"

namespace qrt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double clip = 1e-10;
inline constexpr double trace_repair = 1e-8;
inline constexpr double support = 1e-9;
}  // namespace tol

inline std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline std::string dims_string(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

/// Eigenvalues sorted in descending order with matching eigenvector columns.
struct Spectrum {
  RealVector values;
  Matrix vectors;
};

inline Spectrum hermitian_spectrum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::Index n = h.rows();
  Spectrum s{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    s.values(i) = solver.eigenvalues()(n - 1 - i);
    s.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return s;
}

/// Hermitian, positive semidefinite, unit-trace matrix on a product of
/// subsystems. Instances are only produced by `validate_state` or by
/// operations that preserve the invariants.
class DensityMatrix {
 public:
  const Matrix& matrix() const noexcept { return rho_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  std::size_t parties() const noexcept { return dims_.size(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return rho_(i, j); }

  Spectrum spectrum() const { return hermitian_spectrum(rho_); }
  RealVector eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
  }

  /// Wraps a matrix that is a state by construction (up to roundoff), e.g. the
  /// output of a CPTP map applied to a valid state. Only Hermitian symmetrization
  /// and trace renormalization are applied.
  static DensityMatrix from_trusted(Matrix m, Dims dims) {
    Matrix h = (m + m.adjoint()) * 0.5;
    const double tr = h.trace().real();
    if (tr > 0) h /= tr;
    return DensityMatrix(std::move(h), std::move(dims));
  }

  friend DensityMatrix validate_state(const Matrix& raw, Dims dims);

 private:
  DensityMatrix(Matrix m, Dims d) : rho_(std::move(m)), dims_(std::move(d)) {}

  Matrix rho_;
  Dims dims_;
};

inline void check_dims(const Matrix& m, const Dims& dims) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimMismatch, "matrix is not square");
  if (dims.empty()) fail(ErrorKind::DimMismatch, "empty subsystem dimension list");
  for (std::size_t d : dims)
    if (d == 0) fail(ErrorKind::DimMismatch, "subsystem dimension must be positive");
  if (product(dims) != static_cast<std::size_t>(m.rows()))
    fail(ErrorKind::DimMismatch, "dims " + dims_string(dims) + " do not multiply to " +
                                     std::to_string(m.rows()));
}

/// Checks and repairs a raw matrix into a state. Asymmetry up to 1e-10 is
/// symmetrized, eigenvalues in [-1e-10, 0) are clipped, and a trace drift up to
/// 1e-8 is renormalized; anything worse throws.
inline DensityMatrix validate_state(const Matrix& raw, Dims dims) {
  check_dims(raw, dims);
  if (!raw.allFinite()) fail(ErrorKind::DomainError, "matrix has non-finite entries");
  const double asym = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::hermitian)
    fail(ErrorKind::NotHermitian, "max |M - M^dagger| = " + std::to_string(asym));
  Matrix h = (raw + raw.adjoint()) * 0.5;

  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol::trace_repair)
    fail(ErrorKind::BadTrace, "trace = " + std::to_string(tr));

  Spectrum s = hermitian_spectrum(h);
  const double min_eig = s.values.minCoeff();
  if (min_eig < -tol::clip) fail(ErrorKind::NotPSD, "min eigenvalue = " + std::to_string(min_eig));
  if (min_eig < 0) {
    RealVector clipped = s.values.cwiseMax(0.0);
    h = s.vectors * clipped.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    h = (h + h.adjoint()) * 0.5;
  }
  h /= h.trace().real();
  return DensityMatrix(std::move(h), std::move(dims));
}

inline DensityMatrix pure_state(const Eigen::VectorXcd& psi, Dims dims) {
  Eigen::VectorXcd v = psi / psi.norm();
  return validate_state(v * v.adjoint(), std::move(dims));
}

inline DensityMatrix maximally_mixed(Dims dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return validate_state(Matrix::Identity(n, n) / static_cast<double>(n), std::move(dims));
}

inline DensityMatrix diagonal_state(const std::vector<double>& p, Dims dims) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return validate_state(m, std::move(dims));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::from_trusted(std::move(out), std::move(dims));
}

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

namespace detail {

// Row-major multi-index digits of a flat index over `dims`.
inline std::vector<std::size_t> digits(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace detail

/// Partial trace on a raw operator; `keep` lists the retained subsystems in
/// increasing order.
inline Matrix partial_trace_matrix(const Matrix& m, const Dims& dims, const std::vector<std::size_t>& keep,
                                   Dims* kept_dims = nullptr) {
  check_dims(m, dims);
  if (keep.empty()) fail(ErrorKind::DimMismatch, "keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) fail(ErrorKind::DimMismatch, "subsystem index out of range");
    if (kept[k]) fail(ErrorKind::DimMismatch, "duplicate subsystem index");
    kept[k] = true;
  }
  Dims kd, td;
  for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? kd : td).push_back(dims[k]);
  const std::size_t nk = product(kd), nt = td.empty() ? 1 : product(td);

  // full index for every (kept, traced) pair
  std::vector<std::size_t> index(nk * nt);
  for (std::size_t a = 0; a < nk; ++a) {
    const auto da = detail::digits(a, kd);
    for (std::size_t t = 0; t < nt; ++t) {
      const auto dt = td.empty() ? std::vector<std::size_t>{} : detail::digits(t, td);
      std::vector<std::size_t> full(dims.size());
      std::size_t ia = 0, it = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) full[k] = kept[k] ? da[ia++] : dt[it++];
      index[a * nt + t] = detail::flat(full, dims);
    }
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  for (std::size_t a = 0; a < nk; ++a)
    for (std::size_t b = 0; b < nk; ++b) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < nt; ++t)
        acc += m(static_cast<Eigen::Index>(index[a * nt + t]), static_cast<Eigen::Index>(index[b * nt + t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  if (kept_dims) *kept_dims = kd;
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  Dims kd;
  Matrix out = partial_trace_matrix(rho.matrix(), rho.dims(), keep, &kd);
  return DensityMatrix::from_trusted(std::move(out), std::move(kd));
}

/// Reorders subsystems: output subsystem i is input subsystem `perm[i]`.
inline DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& perm) {
  const Dims& dims = rho.dims();
  if (perm.size() != dims.size()) fail(ErrorKind::DimMismatch, "permutation length mismatch");
  Dims out_dims(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= dims.size()) fail(ErrorKind::DimMismatch, "permutation index out of range");
    out_dims[i] = dims[perm[i]];
  }
  const std::size_t n = rho.dim();
  std::vector<std::size_t> map(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = detail::digits(j, out_dims);
    std::vector<std::size_t> src(dims.size());
    for (std::size_t i = 0; i < perm.size(); ++i) src[perm[i]] = d[i];
    map[j] = detail::flat(src, dims);
  }
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          rho(static_cast<Eigen::Index>(map[a]), static_cast<Eigen::Index>(map[b]));
  return DensityMatrix::from_trusted(std::move(out), std::move(out_dims));
}

/// Same matrix, coarser subsystem labelling: consecutive groups of
/// `group_sizes` subsystems are merged into one.
inline DensityMatrix merge_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& group_sizes) {
  Dims merged;
  std::size_t k = 0;
  for (std::size_t g : group_sizes) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < g; ++i, ++k) {
      if (k >= rho.parties()) fail(ErrorKind::DimMismatch, "group sizes exceed subsystem count");
      d *= rho.dims()[k];
    }
    merged.push_back(d);
  }
  if (k != rho.parties()) fail(ErrorKind::DimMismatch, "group sizes do not cover all subsystems");
  return DensityMatrix::from_trusted(rho.matrix(), std::move(merged));
}

/// rho^{(x)n} with the copies of each party grouped into a single subsystem,
/// so a k-party state stays a k-party state.
inline DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t n) {
  if (n == 0) fail(ErrorKind::DomainError, "tensor power needs n >= 1");
  DensityMatrix out = rho;
  for (std::size_t i = 1; i < n; ++i) out = tensor(out, rho);
  const std::size_t k = rho.parties();
  std::vector<std::size_t> perm;
  for (std::size_t party = 0; party < k; ++party)
    for (std::size_t copy = 0; copy < n; ++copy) perm.push_back(copy * k + party);
  out = permute_subsystems(out, perm);
  return merge_subsystems(out, std::vector<std::size_t>(k, n));
}

/// Applies `u` to subsystem `party` (identity elsewhere): (I (x) u (x) I) rho (...)^dagger.
inline Matrix local_operator(const Dims& dims, std::size_t party, const Matrix& u) {
  std::size_t left = 1, right = 1;
  for (std::size_t k = 0; k < party; ++k) left *= dims[k];
  for (std::size_t k = party + 1; k < dims.size(); ++k) right *= dims[k];
  return kron(kron(Matrix::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left)), u),
              Matrix::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right)));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(rho.dim()) || u.cols() != u.rows())
    fail(ErrorKind::DimMismatch, "unitary size does not match state");
  return DensityMatrix::from_trusted(u * rho.matrix() * u.adjoint(), rho.dims());
}

}  // namespace qrt
