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

#include <Eigen/Eigenvalues>

#include <cmath>
#include <span>

#include "qrt/state.hpp"

namespace qrt {

/// Number of real parameters describing a d x d unitary.
constexpr std::size_t unitary_param_count(std::size_t d) { return d * d; }

/// Anti-Hermitian generator from d^2 reals: d diagonal phases followed by
/// (re, im) pairs for the strictly upper triangle in row-major order.
inline Matrix antihermitian_generator(std::span<const double> theta, std::size_t d) {
  if (theta.size() != unitary_param_count(d)) fail(ErrorKind::DimMismatch, "unitary parameter count mismatch");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a = Matrix::Zero(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Complex(0.0, theta[k++]);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex z(theta[k], theta[k + 1]);
      k += 2;
      a(i, j) = z;
      a(j, i) = -std::conj(z);
    }
  return a;
}

/// U = exp(A(theta)), evaluated through the Hermitian eigenproblem of -iA so
/// the result is unitary to machine precision.
inline Matrix unitary_from_params(std::span<const double> theta, std::size_t d) {
  if (d == 1) {
    Matrix u(1, 1);
    u(0, 0) = std::exp(Complex(0.0, theta[0]));
    return u;
  }
  const Matrix h = Complex(0.0, -1.0) * antihermitian_generator(theta, d);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXcd phases =
      solver.eigenvalues().unaryExpr([](double l) { return std::exp(Complex(0.0, l)); });
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

inline Matrix unitary_from_params(const RealVector& theta, std::size_t d) {
  return unitary_from_params(std::span<const double>(theta.data(), static_cast<std::size_t>(theta.size())), d);
}

/// Principal logarithm chart: parameters theta with exp(A(theta)) == u.
inline RealVector params_from_unitary(const Matrix& u) {
  const std::size_t d = static_cast<std::size_t>(u.rows());
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  Eigen::VectorXcd logs(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) logs(i) = Complex(0.0, std::arg(t(i, i)));
  Matrix a = q * logs.asDiagonal() * q.adjoint();
  a = (a - a.adjoint()) * 0.5;
  RealVector theta(static_cast<Eigen::Index>(unitary_param_count(d)));
  Eigen::Index k = 0;
  const auto n = static_cast<Eigen::Index>(d);
  for (Eigen::Index i = 0; i < n; ++i) theta(k++) = a(i, i).imag();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      theta(k++) = a(i, j).real();
      theta(k++) = a(i, j).imag();
    }
  return theta;
}

inline double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace qrt
