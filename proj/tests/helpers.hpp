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

#include "qrt/state.hpp"

namespace qrt::testing {

inline DensityMatrix bell() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = 1.0;
  v(3) = 1.0;
  return pure_state(v, {2, 2});
}

inline DensityMatrix ghz() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = 1.0;
  v(7) = 1.0;
  return pure_state(v, {2, 2, 2});
}

inline DensityMatrix ket(std::size_t index, Dims dims) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(product(dims)));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return pure_state(v, std::move(dims));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// (1-t) rho + t tau, a nearby state for continuity checks.
inline DensityMatrix mix(const DensityMatrix& rho, const DensityMatrix& tau, double t) {
  return DensityMatrix::from_trusted((1.0 - t) * rho.matrix() + t * tau.matrix(), rho.dims());
}

}  // namespace qrt::testing
