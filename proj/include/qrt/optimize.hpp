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
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include "qrt/random.hpp"

namespace qrt {

struct NelderMeadOptions {
  double ftol = 1e-9;          // spread of simplex values at termination
  double xtol = 1e-8;          // simplex diameter that stops the search outright
  double xtol_loose = 1e-4;    // diameter required together with ftol
  std::size_t max_evals = 20000;
  double initial_step = 0.3;
  std::size_t reinitializations = 2;  // fresh simplex around the optimum after convergence
};

struct NelderMeadResult {
  RealVector x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex search with dimension-adaptive coefficients
/// (reflection 1, expansion 1+2/n, contraction 3/4-1/(2n), shrink 1-1/n).
/// After convergence the simplex is rebuilt around the best vertex a few
/// times, which recovers from the classic collapsed-simplex stall.
template <class Objective>
NelderMeadResult nelder_mead(Objective&& f, RealVector x0, const NelderMeadOptions& opt = {}) {
  const Eigen::Index n = x0.size();
  NelderMeadResult result;
  if (n == 0) {
    result.x = x0;
    result.value = f(x0);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dn;
  const double rho = std::max(0.5, 0.75 - 1.0 / (2.0 * dn)), sigma = std::max(0.5, 1.0 - 1.0 / dn);

  std::size_t evals = 0;
  auto eval = [&](const RealVector& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  RealVector best = std::move(x0);
  double best_value = eval(best);
  bool converged = false;
  double step = opt.initial_step;

  for (std::size_t round = 0; round <= opt.reinitializations && evals < opt.max_evals; ++round) {
    std::vector<RealVector> simplex(static_cast<std::size_t>(n + 1), best);
    std::vector<double> values(static_cast<std::size_t>(n + 1), best_value);
    for (Eigen::Index i = 0; i < n; ++i) {
      simplex[static_cast<std::size_t>(i + 1)](i) += step;
      values[static_cast<std::size_t>(i + 1)] = eval(simplex[static_cast<std::size_t>(i + 1)]);
    }
    std::vector<std::size_t> order(simplex.size());
    converged = false;
    while (evals < opt.max_evals) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];

      double diameter = 0.0;
      for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[lo]).lpNorm<Eigen::Infinity>());
      if ((values[hi] - values[lo] <= opt.ftol && diameter <= opt.xtol_loose) || diameter <= opt.xtol) {
        converged = true;
        break;
      }

      RealVector centroid = RealVector::Zero(n);
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != hi) centroid += simplex[i];
      centroid /= dn;

      const RealVector xr = centroid + alpha * (centroid - simplex[hi]);
      const double fr = eval(xr);
      if (fr < values[lo]) {
        const RealVector xe = centroid + gamma * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          simplex[hi] = xe;
          values[hi] = fe;
        } else {
          simplex[hi] = xr;
          values[hi] = fr;
        }
        continue;
      }
      if (fr < values[second]) {
        simplex[hi] = xr;
        values[hi] = fr;
        continue;
      }
      const bool outside = fr < values[hi];
      const RealVector xc = outside ? RealVector(centroid + rho * (xr - centroid))
                                    : RealVector(centroid + rho * (simplex[hi] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[hi])) {
        simplex[hi] = xc;
        values[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i == lo) continue;
        simplex[i] = simplex[lo] + sigma * (simplex[i] - simplex[lo]);
        values[i] = eval(simplex[i]);
      }
    }
    const auto it = std::min_element(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(it - values.begin());
    const bool improved = *it < best_value - opt.ftol;
    if (*it <= best_value) {
      best = simplex[idx];
      best_value = *it;
    }
    if (round > 0 && !improved) break;
    step = std::max(opt.initial_step * 0.1, 1e-3);
  }
  result.x = std::move(best);
  result.value = best_value;
  result.evaluations = evals;
  result.converged = converged;
  return result;
}

/// Parallelism cap: QRT_THREADS if set (>= 1), else the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("QRT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs `task(i)` for i in [0, count) on up to `workers` threads. Results are
/// written by index, so the outcome does not depend on scheduling.
template <class Task>
void parallel_for(std::size_t count, std::size_t workers, Task&& task) {
  workers = std::min(std::max<std::size_t>(1, workers), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) task(i);
    });
  for (auto& t : pool) t.join();
}

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::size_t max_iters = 20000;  // objective evaluations per restart
  double ftol = 1e-9;
  double tolerance = 1e-3;  // reported accuracy of the minimum
  std::size_t threads = 0;  // 0: worker_count()
};

inline void check_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) fail(ErrorKind::DomainError, "restarts must be >= 1");
  if (!(cfg.ftol > 0.0)) fail(ErrorKind::DomainError, "ftol must be positive");
  if (cfg.max_iters < 1) fail(ErrorKind::DomainError, "max_iters must be >= 1");
}

struct MultiStartResult {
  RealVector argmin;
  double value = std::numeric_limits<double>::infinity();
  std::size_t winning_restart = 0;
  std::size_t restarts_used = 0;
  std::size_t evaluations = 0;
  bool budget_exceeded = false;
};

/// Multi-start Nelder-Mead. `start(i, rng)` produces the initial point of
/// restart i from an RNG seeded with derive_seed(cfg.seed, stream, i). The
/// first restart within ftol of the overall minimum wins.
template <class Objective, class Start>
MultiStartResult multistart_minimize(Objective&& objective, Start&& start, const OptimizerConfig& cfg,
                                     std::uint64_t stream = 0) {
  check_config(cfg);
  std::vector<NelderMeadResult> runs(cfg.restarts);
  NelderMeadOptions opt;
  opt.ftol = cfg.ftol;
  opt.max_evals = cfg.max_iters;
  parallel_for(cfg.restarts, cfg.threads ? cfg.threads : worker_count(), [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, stream, i));
    runs[i] = nelder_mead(objective, start(i, rng), opt);
  });

  MultiStartResult out;
  out.restarts_used = cfg.restarts;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    best = std::min(best, r.value);
    out.evaluations += r.evaluations;
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].value <= best + cfg.ftol) {
      out.winning_restart = i;
      out.argmin = runs[i].x;
      out.value = runs[i].value;
      out.budget_exceeded = !runs[i].converged;
      break;
    }
  }
  return out;
}

}  // namespace qrt
