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
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qrt/report.hpp"
#include "qrt/state.hpp"

// State files: {"dims":[d1,...,dk], "matrix":[[[re,im],...],...]}, row-major.

namespace qrt {

using Json = nlohmann::json;

inline DensityMatrix state_from_json(const Json& j) {
  try {
    const Dims dims = j.at("dims").get<Dims>();
    const Json& rows = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != n) fail(ErrorKind::DimMismatch, "matrix row " + std::to_string(r) + " has wrong length");
      for (Eigen::Index c = 0; c < n; ++c) {
        const Json& z = row.at(static_cast<std::size_t>(c));
        if (z.is_number()) m(r, c) = Complex(z.get<double>(), 0.0);
        else m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return validate_state(m, dims);
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json state_to_json(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back({rho(r, c).real(), rho(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return Json{{"dims", rho.dims()}, {"matrix", std::move(rows)}};
}

inline DensityMatrix read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open state file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
  return state_from_json(j);
}

inline void write_state(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << state_to_json(rho).dump(1) << "\n";
}

/// Non-finite values become null (JSON has no infinity).
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json report_to_json(const MeasureReport& r) {
  return Json{{"value", number(r.value)},     {"tolerance", r.tolerance},   {"seed", r.seed},
              {"restarts_used", r.restarts_used}, {"argmin", r.argmin},       {"budget_exceeded", r.budget_exceeded},
              {"detail", r.detail}};
}

inline Json bound_to_json(const BoundCheck& c) {
  return Json{{"lhs", number(c.lhs)},
              {"rhs", number(c.rhs)},
              {"trace_distance", c.trace_distance},
              {"slack", c.slack},
              {"assumption_met", c.assumption_met},
              {"holds", c.holds()},
              {"status", status_name(c.status)}};
}

}  // namespace qrt
