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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qrt/discord.hpp"
#include "qrt/oracle.hpp"

namespace qrt {
namespace {

using testing::bell;
using testing::ket;
using testing::max_abs_diff;

// Independent brute-force references for qubit pairs. They touch only Eigen
// and the raw matrix, never the dephasing or entropy code under test.

Matrix bloch_basis(double theta, double phi) {
  Matrix u(2, 2);
  const Complex e = std::exp(Complex(0.0, phi));
  u << std::cos(theta / 2), -std::conj(e) * std::sin(theta / 2), e * std::sin(theta / 2), std::cos(theta / 2);
  return u;
}

double raw_entropy(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  double s = 0.0;
  for (double l : es.eigenvalues())
    if (l > 1e-15) s -= l * std::log2(l);
  return s;
}

struct Grid {
  std::vector<Matrix> bases;
  explicit Grid(int n) {
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < 2 * n; ++j) bases.push_back(bloch_basis(std::numbers::pi * i / n, std::numbers::pi * j / n));
  }
};

double grid_cc(const Matrix& rho, const Grid& g) {
  const double s = raw_entropy(rho);
  double best = 1e9;
  for (const auto& ua : g.bases)
    for (const auto& ub : g.bases) {
      double h = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Eigen::VectorXcd v(4);
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) v(2 * x + y) = ua(x, i) * ub(y, j);
          const double p = std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
          if (p > 1e-15) h -= p * std::log2(p);
        }
      best = std::min(best, h - s);
    }
  return best;
}

// Conditional states of A after measuring B in basis ub, unnormalized.
std::vector<Matrix> conditionals(const Matrix& rho, const Matrix& ub) {
  std::vector<Matrix> out;
  for (int k = 0; k < 2; ++k) {
    Matrix x = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) x(i, j) += std::conj(ub(s, k)) * rho(2 * i + s, 2 * j + t) * ub(t, k);
    out.push_back(x);
  }
  return out;
}

double grid_qc(const Matrix& rho, const Grid& g) {
  double best = 1e9;
  for (const auto& ub : g.bases) {
    double h = 0.0;
    for (const auto& x : conditionals(rho, ub)) h += raw_entropy(x);
    best = std::min(best, h);
  }
  return best - raw_entropy(rho);
}

double grid_mbqd(const Matrix& rho, const Grid& g) {
  Matrix rho_b = Matrix::Zero(2, 2);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) rho_b(s, t) = rho(s, t) + rho(2 + s, 2 + t);
  double best = 1e9;
  for (const auto& ub : g.bases) {
    double h = 0.0;
    for (const auto& x : conditionals(rho, ub)) {
      const double p = x.trace().real();
      if (p > 1e-15) h += p * raw_entropy(x / p);
    }
    best = std::min(best, h);
  }
  return raw_entropy(rho_b) - raw_entropy(rho) + best;
}

OptimizerConfig quick(std::uint64_t seed = 0) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  return cfg;
}

DensityMatrix cc_state() {
  Rng rng(17);
  return random_cc_state(rng, 2, 2);
}

// ---------------------------------------------------------------------------

TEST(Dephase, BellComputationalCC) {
  const DensityMatrix chi = dephase_cc(bell(), LocalBasisPair::computational(2, 2));
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = want(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(chi.matrix(), want), 1e-14);
}

TEST(Dephase, BellComputationalQC) {
  const DensityMatrix chi = dephase_qc(bell(), LocalBasisPair::computational(2, 2));
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = want(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(chi.matrix(), want), 1e-14);
}

TEST(Dephase, MaximallyMixedIsFixed) {
  Rng rng(1);
  const DensityMatrix mm = maximally_mixed({2, 3});
  for (int i = 0; i < 10; ++i) {
    const auto basis = LocalBasisPair::random(rng, 2, 3);
    for (auto v : {DiscordVariant::CC, DiscordVariant::QC, DiscordVariant::CQ}) {
      EXPECT_LT(max_abs_diff(dephase(mm, basis, v).matrix(), mm.matrix()), 1e-14);
      EXPECT_NEAR(discord_objective(mm, basis, v), 0.0, 1e-12);
    }
  }
}

TEST(Dephase, FreeStatesAreFixedPointsInTheirOwnBasis) {
  Rng rng(2);
  const Matrix ua = random_unitary(rng, 2), ub = random_unitary(rng, 3);
  const auto basis = LocalBasisPair::from_unitaries(ua, ub);
  // CC state diagonal in the (ua, ub) product basis
  const Matrix w = kron(ua, ub);
  RealVector p(6);
  p << 0.1, 0.2, 0.05, 0.3, 0.15, 0.2;
  const DensityMatrix cc = DensityMatrix::from_trusted(w * p.cast<Complex>().asDiagonal() * w.adjoint(), {2, 3});
  EXPECT_LT(max_abs_diff(dephase_cc(cc, basis).matrix(), cc.matrix()), 1e-12);
  EXPECT_NEAR(discord_objective(cc, basis, DiscordVariant::CC), 0.0, 1e-10);
  // QC state sum_k p_k rho_k (x) |b_k><b_k|
  Matrix m = Matrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) m += (1.0 / 3) * kron(random_state(rng, Dims{2}, 2).matrix(), ub.col(k) * ub.col(k).adjoint());
  const DensityMatrix qc = DensityMatrix::from_trusted(m, {2, 3});
  EXPECT_LT(max_abs_diff(dephase_qc(qc, basis).matrix(), qc.matrix()), 1e-12);
  EXPECT_NEAR(discord_objective(qc, basis, DiscordVariant::QC), 0.0, 1e-10);
}

TEST(Dephase, ProductWithComputationalBIsQcFixed) {
  const DensityMatrix prod = tensor(random_state(Dims{2}, 2, 3), ket(0, {2}));
  EXPECT_LT(max_abs_diff(dephase_qc(prod, LocalBasisPair::computational(2, 2)).matrix(), prod.matrix()), 1e-14);
}

TEST(Dephase, ResultIsClassicalAndNormalized) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 3});
    const auto basis = LocalBasisPair::random(rng, 2, 3);
    const DensityMatrix cc = dephase_cc(rho, basis), qc = dephase_qc(rho, basis), cq = dephase_cq(rho, basis);
    EXPECT_NEAR(cc.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_cc(cc));
    EXPECT_TRUE(is_qc(qc));
    EXPECT_TRUE(is_cq(cq));
  }
}

TEST(Dephase, DimensionMismatch) {
  EXPECT_THROW(dephase_cc(bell(), LocalBasisPair::computational(2, 3)), Error);
  EXPECT_THROW(dephase_qc(bell(), Matrix::Identity(3, 3)), Error);
  EXPECT_THROW(discord_objective(testing::ghz(), LocalBasisPair::computational(2, 2), DiscordVariant::CC), Error);
}

TEST(Dephase, PairedDefect) {
  const auto comp = LocalBasisPair::computational(2, 2);
  EXPECT_NEAR(paired_cc_defect(bell(), comp), 0.0, 1e-14);
  EXPECT_NEAR(paired_cc_defect(maximally_mixed({2, 2}), comp), 0.5, 1e-14);
}

TEST(Objective, BellComputationalIsOneBit) {
  EXPECT_NEAR(discord_objective(bell(), LocalBasisPair::computational(2, 2), DiscordVariant::CC), 1.0, 1e-12);
}

TEST(Objective, SaturationIdentity) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const auto basis = LocalBasisPair::random(rng, 2, 2);
    for (auto v : {DiscordVariant::CC, DiscordVariant::QC, DiscordVariant::CQ}) {
      const double rel = relative_entropy(rho, dephase(rho, basis, v));
      EXPECT_NEAR(rel, discord_objective(rho, basis, v), 1e-8);
    }
  }
}

TEST(Objective, LocalUnitaryCovariance) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 3});
    const Matrix va = random_unitary(rng, 2), vb = random_unitary(rng, 3);
    const Matrix ua = random_unitary(rng, 2), ub = random_unitary(rng, 3);
    const DensityMatrix rotated = apply_unitary(rho, kron(va, vb));
    const auto moved = LocalBasisPair::from_unitaries(va * ua, vb * ub);
    const auto orig = LocalBasisPair::from_unitaries(ua, ub);
    for (auto v : {DiscordVariant::CC, DiscordVariant::QC, DiscordVariant::CQ})
      EXPECT_NEAR(discord_objective(rotated, moved, v), discord_objective(rho, orig, v), 1e-9);
  }
}

TEST(RelentDiscord, BellIsOneBit) {
  for (auto v : {DiscordVariant::CC, DiscordVariant::QC, DiscordVariant::CQ}) {
    const MeasureReport r = relent_discord(bell(), v);
    EXPECT_NEAR(r.value, 1.0, 1e-3) << variant_name(v);
    EXPECT_EQ(r.restarts_used, 32u);
    EXPECT_EQ(r.detail, variant_name(v));
  }
}

TEST(RelentDiscord, FreeStatesVanish) {
  EXPECT_NEAR(relent_discord(cc_state(), DiscordVariant::CC, quick()).value, 0.0, 1e-6);
  Rng rng(7);
  EXPECT_NEAR(relent_discord(random_qc_state(rng, 2, 2), DiscordVariant::QC, quick()).value, 0.0, 1e-6);
  EXPECT_NEAR(relent_discord(random_cq_state(rng, 2, 2), DiscordVariant::CQ, quick()).value, 0.0, 1e-6);
  EXPECT_NEAR(relent_discord(maximally_mixed({2, 3}), DiscordVariant::CC, quick()).value, 0.0, 1e-9);
}

TEST(RelentDiscord, ArgminReproducesValue) {
  const DensityMatrix rho = random_state(Dims{2, 2}, 3, 8);
  const MeasureReport r = relent_discord(rho, DiscordVariant::CC, quick());
  ASSERT_EQ(r.argmin.size(), 8u);
  LocalBasisPair b{2, 2, Eigen::Map<const RealVector>(r.argmin.data(), 4), Eigen::Map<const RealVector>(r.argmin.data() + 4, 4)};
  EXPECT_NEAR(discord_objective(rho, b, DiscordVariant::CC), r.value, 1e-12);
}

TEST(RelentDiscord, DeterministicPerSeed) {
  const DensityMatrix rho = random_state(Dims{2, 2}, 4, 9);
  const auto a = relent_discord(rho, DiscordVariant::CC, quick(3));
  const auto b = relent_discord(rho, DiscordVariant::CC, quick(3));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin, b.argmin);
}

TEST(RelentDiscord, MatchesGridOracle) {
  const Grid grid(24);
  Rng rng(10);
  for (int i = 0; i < 6; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const double cc = relent_discord(rho, DiscordVariant::CC, quick()).value;
    const double qc = relent_discord(rho, DiscordVariant::QC, quick()).value;
    const double gcc = grid_cc(rho.matrix(), grid), gqc = grid_qc(rho.matrix(), grid);
    // the grid minimum is itself an upper bound, slightly off the optimum
    EXPECT_LE(cc, gcc + 1e-9);
    EXPECT_GE(cc, gcc - 0.02);
    EXPECT_LE(qc, gqc + 1e-9);
    EXPECT_GE(qc, gqc - 0.02);
  }
}

TEST(RelentDiscord, OrderingAndNonnegativity) {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const double cc = relent_discord(rho, DiscordVariant::CC, quick()).value;
    const double qc = relent_discord(rho, DiscordVariant::QC, quick()).value;
    const double cq = relent_discord(rho, DiscordVariant::CQ, quick()).value;
    EXPECT_LE(qc, cc + 2e-3);
    EXPECT_LE(cq, cc + 2e-3);
    EXPECT_GE(qc, -2e-3);
  }
}

TEST(RelentDiscord, LocalUnitaryInvariance) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const DensityMatrix rot = apply_unitary(rho, kron(random_unitary(rng, 2), random_unitary(rng, 2)));
    EXPECT_NEAR(relent_discord(rho, DiscordVariant::CC, quick()).value,
                relent_discord(rot, DiscordVariant::CC, quick()).value, 2e-3);
  }
}

TEST(RelentDiscord, RejectsBadInput) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(relent_discord(bell(), DiscordVariant::CC, cfg), Error);
  EXPECT_THROW(relent_discord(testing::ghz(), DiscordVariant::CC), Error);
}

TEST(MeasurementEntropy, Examples) {
  const Measurement comp = Measurement::projective(Matrix::Identity(2, 2));
  EXPECT_NEAR(measurement_conditional_entropy(bell(), comp), 0.0, 1e-12);
  Rng rng(13);
  const Measurement rnd = Measurement::projective(random_unitary(rng, 2));
  EXPECT_NEAR(measurement_conditional_entropy(maximally_mixed({2, 2}), rnd), 1.0, 1e-12);
  const DensityMatrix a = random_state(Dims{2}, 2, 14);
  EXPECT_NEAR(measurement_conditional_entropy(tensor(a, random_state(Dims{2}, 2, 15)), rnd), von_neumann_entropy(a), 1e-12);
}

TEST(MeasurementEntropy, ZeroProbabilityOutcomesContributeNothing) {
  const Measurement comp = Measurement::projective(Matrix::Identity(2, 2));
  EXPECT_NEAR(measurement_conditional_entropy(tensor(maximally_mixed({2}), ket(0, {2})), comp), 1.0, 1e-12);
}

TEST(MeasurementEntropy, BadMeasurement) {
  Measurement half;
  half.operators.push_back(Matrix::Identity(2, 2) * 0.5);
  try {
    measurement_conditional_entropy(bell(), half);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadMeasurement);
  }
  EXPECT_THROW(measurement_conditional_entropy(bell(), Measurement{}), Error);
}

TEST(Mbqd, Examples) {
  EXPECT_NEAR(measurement_discord(bell()).value, 1.0, 1e-3);
  Rng rng(16);
  EXPECT_NEAR(measurement_discord(random_qc_state(rng, 2, 2), quick()).value, 0.0, 1e-3);
  const DensityMatrix prod = tensor(random_state(Dims{2}, 2, 1), random_state(Dims{2}, 2, 2));
  EXPECT_NEAR(measurement_discord(prod, quick()).value, 0.0, 1e-6);
}

TEST(Mbqd, DirectionSwapsParties) {
  Rng rng(18);
  const DensityMatrix cq = random_cq_state(rng, 2, 2);
  MbqdOptions on_a;
  on_a.side = MeasuredSide::OnA;
  EXPECT_NEAR(measurement_discord(cq, quick(), on_a).value, 0.0, 1e-3);
  EXPECT_EQ(measurement_discord(cq, quick(), on_a).detail, "mbqd:onA");
}

TEST(Mbqd, MatchesGridOracle) {
  const Grid grid(40);
  Rng rng(19);
  for (int i = 0; i < 6; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const double d = measurement_discord(rho, quick()).value;
    const double g = grid_mbqd(rho.matrix(), grid);
    EXPECT_LE(d, g + 1e-9);
    EXPECT_GE(d, g - 0.01);
    EXPECT_GE(d, -2e-3);
  }
}

TEST(Mbqd, PovmNeverWorseThanProjective) {
  MbqdOptions povm;
  povm.povm = true;
  EXPECT_NEAR(measurement_discord(bell(), quick(), povm).value, 1.0, 1e-3);
  Rng rng(20);
  for (int i = 0; i < 3; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    EXPECT_LE(measurement_discord(rho, quick(), povm).value, measurement_discord(rho, quick()).value + 2e-3);
  }
}

TEST(Mbqd, PovmFromUnitaryIsComplete) {
  Rng rng(21);
  for (std::size_t d : {2u, 3u}) EXPECT_LT(completeness_defect(povm_from_unitary(random_unitary(rng, d * d), d), d), 1e-12);
}

TEST(Mbqd, Subadditive) {
  Rng rng(22);
  for (int i = 0; i < 3; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const DensityMatrix sigma = random_state_any_rank(rng, {2, 2});
    // (A A') (B B') grouping of rho (x) sigma
    const DensityMatrix joint = merge_subsystems(permute_subsystems(tensor(rho, sigma), {0, 2, 1, 3}), {2, 2});
    const double lhs = measurement_discord(joint, quick()).value;
    EXPECT_LE(lhs, measurement_discord(rho, quick()).value + measurement_discord(sigma, quick()).value + 3e-3);
  }
}

TEST(Continuity, RightHandSides) {
  EXPECT_EQ(discord_continuity_rhs(0.0, 4), 0.0);
  EXPECT_NEAR(discord_continuity_rhs(0.5, 4), 4.0, 1e-14);
  EXPECT_NEAR(mbqd_continuity_rhs(0.5, 4), 8.0, 1e-14);
}

TEST(Continuity, Examples) {
  const auto same = discord_continuity_check(bell(), bell(), DiscordVariant::CC, quick());
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_TRUE(same.holds());
  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = d(3, 3) = 0.5;
  const DensityMatrix diag = validate_state(d, {2, 2});
  const auto c = discord_continuity_check(bell(), diag, DiscordVariant::CC, quick());
  EXPECT_NEAR(c.trace_distance, 0.5, 1e-12);
  EXPECT_NEAR(c.rhs, 4.0, 1e-12);
  EXPECT_NEAR(c.lhs, 1.0, 1e-3);
  EXPECT_TRUE(c.holds());
  EXPECT_TRUE(mbqd_continuity_check(bell(), diag, quick()).holds());
}

TEST(Continuity, NearbyPairs) {
  Rng rng(23);
  for (int i = 0; i < 8; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, {2, 2});
    const DensityMatrix sigma = testing::mix(rho, random_state_any_rank(rng, {2, 2}), 0.02);
    for (auto v : {DiscordVariant::CC, DiscordVariant::QC})
      EXPECT_NE(discord_continuity_check(rho, sigma, v, quick()).status, BoundStatus::Violated);
    EXPECT_NE(mbqd_continuity_check(rho, sigma, quick()).status, BoundStatus::Violated);
  }
}

}  // namespace
}  // namespace qrt
