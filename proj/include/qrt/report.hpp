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
#include <string>
#include <vector>

#include "qrt/optimize.hpp"

namespace qrt {

/// Outcome of an optimizer-backed measure. `value` is an upper bound on the
/// true minimum; `tolerance` is the accuracy claimed for it.
struct MeasureReport {
  double value = 0.0;
  std::vector<double> argmin;
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool budget_exceeded = false;
  std::string detail;  // e.g. the winning Markov block structure
};

inline MeasureReport make_report(const MultiStartResult& r, const OptimizerConfig& cfg) {
  MeasureReport rep;
  rep.value = r.value;
  rep.argmin.assign(r.argmin.data(), r.argmin.data() + r.argmin.size());
  rep.restarts_used = r.restarts_used;
  rep.seed = cfg.seed;
  rep.tolerance = cfg.tolerance;
  rep.budget_exceeded = r.budget_exceeded;
  return rep;
}

}  // namespace qrt

namespace qrt {

enum class BoundStatus { Holds, Inconclusive, Violated, NotAsserted };

inline const char* status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::Holds: return "holds";
    case BoundStatus::Inconclusive: return "inconclusive";
    case BoundStatus::Violated: return "violated";
    case BoundStatus::NotAsserted: return "not_asserted";
  }
  return "unknown";
}

/// |measure(rho) - measure(sigma)| against an analytic continuity bound. A
/// violation no larger than `slack` (twice the optimizer tolerance) cannot be
/// told apart from optimizer error and is reported as inconclusive.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double trace_distance = 0.0;
  double slack = 0.0;
  bool assumption_met = true;
  BoundStatus status = BoundStatus::Holds;

  bool holds() const { return status == BoundStatus::Holds; }
  double margin() const { return rhs - lhs; }
};

inline BoundStatus classify_bound(double lhs, double rhs, double slack) {
  if (lhs <= rhs) return BoundStatus::Holds;
  return lhs - rhs <= slack ? BoundStatus::Inconclusive : BoundStatus::Violated;
}

}  // namespace qrt
