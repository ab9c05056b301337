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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrt/entropy.hpp"

// Single-mode bosonic states on a truncated Fock space. Units: hbar*omega = 1,
// quadratures q = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2)), so the
// vacuum has variance 1/2 and a thermal state with mean photon number n has
// entropy g2(n).

namespace qrt {

inline constexpr double kMaxTailMass = 1e-8;

/// Truncated single-mode state on levels 0..cutoff. Either a full matrix in
/// the Fock basis or, for Fock-diagonal states, the probability vector.
/// `tail_mass` is the declared weight beyond the cutoff.
class FockState {
 public:
  static FockState diagonal(std::vector<double> p, double tail_mass = 0.0) {
    if (p.empty()) fail(ErrorKind::DomainError, "empty Fock distribution");
    double total = 0.0;
    for (double x : p) {
      if (!(x >= -tol::clip)) fail(ErrorKind::NotPSD, "negative Fock probability");
      total += x;
    }
    if (std::abs(total - 1.0) > tol::trace_repair) fail(ErrorKind::BadTrace, "probabilities sum to " + std::to_string(total));
    for (double& x : p) x = std::max(0.0, x) / total;
    FockState s;
    s.diag_ = std::move(p);
    s.tail_mass_ = tail_mass;
    return s;
  }

  static FockState general(const Matrix& m, double tail_mass = 0.0) {
    FockState s;
    s.matrix_ = validate_state(m, Dims{static_cast<std::size_t>(m.rows())}).matrix();
    s.tail_mass_ = tail_mass;
    return s;
  }

  bool is_diagonal() const { return !diag_.empty(); }
  std::size_t cutoff() const { return (is_diagonal() ? diag_.size() : static_cast<std::size_t>(matrix_.rows())) - 1; }
  double tail_mass() const { return tail_mass_; }
  const std::vector<double>& probabilities() const { return diag_; }

  Matrix matrix() const {
    if (!is_diagonal()) return matrix_;
    const auto n = static_cast<Eigen::Index>(diag_.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag_[static_cast<std::size_t>(i)];
    return m;
  }

  Complex element(std::size_t i, std::size_t j) const {
    if (is_diagonal()) return i == j ? Complex(diag_[i], 0.0) : Complex(0.0, 0.0);
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double entropy() const {
    if (is_diagonal()) return shannon_entropy(std::span<const double>(diag_));
    return matrix_entropy(matrix_);
  }

  double mean_photon_number() const {
    double n = 0.0;
    for (std::size_t l = 0; l <= cutoff(); ++l) n += static_cast<double>(l) * element(l, l).real();
    return n;
  }

 private:
  std::vector<double> diag_;
  Matrix matrix_;
  double tail_mass_ = 0.0;
};

struct GaussianParams {
  double mean_q = 0.0, mean_p = 0.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() * 0.5;

  double symplectic_eigenvalue() const { return std::sqrt(std::max(0.0, cov.determinant())); }
  bool is_bona_fide(double tol = 1e-9) const {
    return cov(0, 0) > 0 && cov(1, 1) > 0 && symplectic_eigenvalue() >= 0.5 - tol;
  }
  /// Entropy of the Gaussian state with this covariance.
  double entropy() const { return g2(std::max(0.0, symplectic_eigenvalue() - 0.5)); }
};

inline void check_tail(const FockState& s) {
  if (s.tail_mass() > kMaxTailMass)
    fail(ErrorKind::TruncationTooLossy, "tail mass " + std::to_string(s.tail_mass()) + " exceeds 1e-8");
}

/// First and second quadrature moments from <a>, <a^2> and <a^dagger a>,
/// computed from matrix elements directly so no truncated ladder-operator
/// product enters.
inline GaussianParams mean_and_covariance(const FockState& s) {
  check_tail(s);
  const std::size_t n = s.cutoff();
  Complex a{0.0, 0.0}, a2{0.0, 0.0};
  double num = 0.0;
  for (std::size_t l = 0; l <= n; ++l) {
    num += static_cast<double>(l) * s.element(l, l).real();
    if (!s.is_diagonal()) {
      if (l >= 1) a += std::sqrt(static_cast<double>(l)) * s.element(l, l - 1);
      if (l >= 2) a2 += std::sqrt(static_cast<double>(l) * static_cast<double>(l - 1)) * s.element(l, l - 2);
    }
  }
  GaussianParams g;
  const double sqrt2 = std::sqrt(2.0);
  g.mean_q = sqrt2 * a.real();
  g.mean_p = sqrt2 * a.imag();
  const double qq = a2.real() + num + 0.5;   // (<a^2> + <a^dag 2> + 2<a^dag a> + 1) / 2
  const double pp = -a2.real() + num + 0.5;
  const double qp = a2.imag();               // <qp + pq>/2 = (<a^2> - <a^dag 2>) / (2i)
  g.cov << qq - g.mean_q * g.mean_q, qp - g.mean_q * g.mean_p, qp - g.mean_q * g.mean_p, pp - g.mean_p * g.mean_p;
  return g;
}

inline double thermal_tail_mass(double nbar, std::size_t cutoff) {
  if (nbar <= 0.0) return 0.0;
  return std::pow(nbar / (nbar + 1.0), static_cast<double>(cutoff + 1));
}

/// Smallest cutoff whose thermal tail beyond it is at most `tail`.
inline std::size_t thermal_cutoff(double nbar, double tail = kMaxTailMass) {
  if (nbar <= 0.0) return 0;
  const double levels = std::log(tail) / std::log(nbar / (nbar + 1.0));
  return static_cast<std::size_t>(std::max(0.0, std::ceil(levels))) ;
}

/// Thermal distribution n^l / (n+1)^(l+1), truncated at `cutoff`.
inline FockState thermal_state(double nbar, std::size_t cutoff) {
  if (!(nbar >= 0.0)) fail(ErrorKind::DomainError, "mean photon number must be >= 0");
  std::vector<double> p(cutoff + 1);
  const double ratio = nbar / (nbar + 1.0);
  double term = 1.0 / (nbar + 1.0);
  for (auto& x : p) {
    x = term;
    term *= ratio;
  }
  const double tail = thermal_tail_mass(nbar, cutoff);
  double total = 0.0;
  for (double x : p) total += x;
  for (auto& x : p) x /= total;
  return FockState::diagonal(std::move(p), tail);
}

/// Gaussification of a Fock-diagonal distribution: the thermal state with the
/// same mean photon number. `cutoff` defaults to the input's.
inline FockState gaussify_fock_diagonal(const std::vector<double>& p, std::optional<std::size_t> cutoff = std::nullopt) {
  double total = 0.0, nbar = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    total += p[l];
    nbar += static_cast<double>(l) * p[l];
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorKind::BadTrace, "probabilities sum to " + std::to_string(total));
  return thermal_state(nbar, cutoff.value_or(p.size() - 1));
}

/// delta = S(Gaussification) - S(rho), with the Gaussian entropy taken from the
/// symplectic eigenvalue of the covariance matrix.
inline double nongaussianity(const FockState& s) {
  const GaussianParams g = mean_and_covariance(s);
  return g.entropy() - s.entropy();
}

/// Closed form for Fock-diagonal states: (n+1)log2(n+1) - n log2 n + sum p log2 p.
inline double nongaussianity_fock_diagonal(const std::vector<double>& p) {
  double nbar = 0.0, plogp = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    nbar += static_cast<double>(l) * p[l];
    plogp -= xlog2x_neg(p[l]);
  }
  return g2(nbar) + plogp;
}

/// Truncated displacement D(alpha) = exp(alpha a^dagger - alpha* a): built on
/// `work` levels and cut to the top-left (cutoff+1) block.
inline Matrix displacement_operator(Complex alpha, std::size_t cutoff, std::size_t work) {
  const auto n = static_cast<Eigen::Index>(std::max(work, cutoff) + 1);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index l = 1; l < n; ++l) a(l - 1, l) = std::sqrt(static_cast<double>(l));
  const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const Matrix h = Complex(0.0, -1.0) * gen;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) * 0.5);
  const Eigen::VectorXcd ph = solver.eigenvalues().unaryExpr([](double l) { return std::exp(Complex(0.0, l)); });
  return solver.eigenvectors() * ph.asDiagonal() * solver.eigenvectors().adjoint();
}

/// D(alpha) rho D(alpha)^dagger on a padded space, cut back to `cutoff`; the
/// weight pushed above the cutoff is added to the declared tail mass.
inline FockState displace(const FockState& s, Complex alpha, std::size_t cutoff, std::size_t pad = 60) {
  const std::size_t work = cutoff + pad;
  const Matrix d = displacement_operator(alpha, cutoff, work);
  const auto n = d.rows();
  Matrix big = Matrix::Zero(n, n);
  const auto m = static_cast<Eigen::Index>(s.cutoff() + 1);
  big.topLeftCorner(m, m) = s.matrix();
  const Matrix out = d * big * d.adjoint();
  const auto k = static_cast<Eigen::Index>(cutoff + 1);
  Matrix block = out.topLeftCorner(k, k);
  const double kept = block.trace().real();
  block /= kept;
  return FockState::general(block, s.tail_mass() + (1.0 - kept));
}

struct Counterexample {
  FockState rho;    // alpha |m><m| + (1 - alpha) |0><0|
  FockState sigma;  // |0><0|
  std::size_t m = 0;
  double trace_distance = 0.0;
  double energy_rho = 0.0;
};

inline std::size_t counterexample_level(double energy, double alpha) {
  if (!(energy > 0.0) || !std::isfinite(energy)) fail(ErrorKind::DomainError, "energy must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::DomainError, "alpha must lie in (0,1]");
  auto m = static_cast<std::size_t>(std::floor(energy / alpha));
  // floor of the exact quotient, guarding against the division rounding either way
  while (m > 0 && static_cast<double>(m) * alpha > energy) --m;
  while (static_cast<double>(m + 1) * alpha <= energy) ++m;
  return m;
}

inline Counterexample counterexample_states(double energy, double alpha, std::size_t cutoff) {
  Counterexample c;
  c.m = counterexample_level(energy, alpha);
  if (cutoff < c.m) fail(ErrorKind::CutoffTooSmall, "cutoff " + std::to_string(cutoff) + " below m = " + std::to_string(c.m));
  std::vector<double> p(cutoff + 1, 0.0), vac(cutoff + 1, 0.0);
  p[0] += 1.0 - alpha;
  p[c.m] += alpha;
  vac[0] = 1.0;
  c.rho = FockState::diagonal(std::move(p));
  c.sigma = FockState::diagonal(std::move(vac));
  c.trace_distance = c.m == 0 ? 0.0 : alpha;
  c.energy_rho = alpha * static_cast<double>(c.m);
  return c;
}

/// f(alpha m) - h2(alpha) with f = g2: the exact non-Gaussianity gap between the
/// two counterexample states (0 when m = 0 and the states coincide).
inline double counterexample_gap(double energy, double alpha) {
  const std::size_t m = counterexample_level(energy, alpha);
  if (m == 0) return 0.0;
  return g2(alpha * static_cast<double>(m)) - h2(alpha);
}

/// Lower bound g(alpha) = f(E - alpha) - h2(alpha) on the gap.
inline double counterexample_lower_bound(double energy, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::DomainError, "alpha must lie in (0,1]");
  if (energy - alpha < 0.0) fail(ErrorKind::DomainError, "E - alpha must be >= 0");
  return g2(energy - alpha) - h2(alpha);
}

struct Alpha0 {
  double alpha = 0.0;
  double g = 0.0;
};

/// Smallest alpha on the grid {step, 2 step, ...} within (0, 1/2] with g(alpha) > 0.
inline Alpha0 find_alpha0(double energy, double step) {
  if (!(energy > 0.0)) fail(ErrorKind::DomainError, "energy must be positive");
  if (!(step > 0.0 && step <= 0.5)) fail(ErrorKind::DomainError, "grid step must lie in (0, 1/2]");
  for (std::size_t k = 1;; ++k) {
    const double alpha = static_cast<double>(k) * step;
    if (alpha > 0.5 + 1e-15) break;
    if (alpha > energy) break;
    const double g = counterexample_lower_bound(energy, alpha);
    if (g > 0.0) return {alpha, g};
  }
  fail(ErrorKind::NotFound, "no grid point with g(alpha) > 0; refine the grid");
}

inline std::vector<double> oscillator_energies(std::size_t cutoff) {
  std::vector<double> e(cutoff + 1);
  for (std::size_t l = 0; l <= cutoff; ++l) e[l] = static_cast<double>(l);
  return e;
}

struct GibbsResult {
  double beta = 0.0;
  double log_partition = 0.0;  // ln Z, energies measured from the ground level
  FockState state = FockState::diagonal({1.0});
  double entropy_bits = 0.0;
  double mean_energy = 0.0;
};

namespace detail {

inline std::vector<double> gibbs_weights(const std::vector<double>& e, double beta, double* log_z = nullptr) {
  double shift = 0.0;
  for (double x : e) shift = std::max(shift, -beta * x);
  std::vector<double> w(e.size());
  double z = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) z += (w[i] = std::exp(-beta * e[i] - shift));
  for (auto& x : w) x /= z;
  if (log_z) *log_z = std::log(z) + shift;
  return w;
}

inline double mean_of(const std::vector<double>& e, const std::vector<double>& w) {
  double m = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) m += e[i] * w[i];
  return m;
}

inline void check_spectrum(const std::vector<double>& e) {
  if (e.size() < 2) fail(ErrorKind::DomainError, "spectrum needs at least two levels");
  if (e.front() != 0.0) fail(ErrorKind::DomainError, "lowest energy must be 0");
  for (std::size_t i = 1; i < e.size(); ++i)
    if (!(e[i] >= e[i - 1])) fail(ErrorKind::DomainError, "energies must be ascending");
}

}  // namespace detail

/// gamma(H, E) = exp(-beta H) / Z with tr[exp(-beta H)(H - E)] = 0, solved by
/// bisection on beta (the mean energy is decreasing in beta). beta may be
/// negative when E exceeds the infinite-temperature mean of a truncated spectrum.
inline GibbsResult gibbs_state(const std::vector<double>& energies, double energy) {
  detail::check_spectrum(energies);
  if (!(energy > 0.0 && energy < energies.back()))
    fail(ErrorKind::EOutOfRange, "E = " + std::to_string(energy) + " outside (0, " + std::to_string(energies.back()) + ")");
  auto mean = [&](double beta) { return detail::mean_of(energies, detail::gibbs_weights(energies, beta)); };

  double lo = -1.0, hi = 1.0;
  while (mean(lo) < energy) lo *= 2.0;
  while (mean(hi) > energy) hi *= 2.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mean(mid) > energy ? lo : hi) = mid;
  }
  GibbsResult r;
  r.beta = 0.5 * (lo + hi);
  std::vector<double> w = detail::gibbs_weights(energies, r.beta, &r.log_partition);
  r.mean_energy = detail::mean_of(energies, w);
  r.entropy_bits = shannon_entropy(std::span<const double>(w));
  r.state = FockState::diagonal(std::move(w));
  return r;
}

/// sqrt(2 eps) S(gamma(H, E/eps)) + g2(sqrt(2 eps)).
inline double conv_continuity_bound(double eps, const std::vector<double>& energies, double energy) {
  if (!(eps > 0.0 && eps <= 0.5)) fail(ErrorKind::DomainError, "epsilon must lie in (0, 1/2]");
  const GibbsResult g = gibbs_state(energies, energy / eps);
  const double r = std::sqrt(2.0 * eps);
  return r * g.entropy_bits + g2(r);
}

/// (lambda, [tr exp(-lambda H)]^lambda) on the truncated spectrum.
inline std::vector<std::pair<double, double>> hamiltonian_condition_probe(const std::vector<double>& energies,
                                                                          const std::vector<double>& lambdas) {
  detail::check_spectrum(energies);
  std::vector<std::pair<double, double>> out;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) fail(ErrorKind::DomainError, "lambda must be positive");
    double log_z = 0.0;
    (void)detail::gibbs_weights(energies, lambda, &log_z);
    out.emplace_back(lambda, std::exp(lambda * log_z));
  }
  return out;
}

}  // namespace qrt
