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

#include "helpers.hpp"
#include "qrt/entropy.hpp"
#include "qrt/random.hpp"

namespace qrt {
namespace {

using testing::bell;
using testing::ghz;
using testing::ket;

double binary_entropy_oracle(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

TEST(Entropy, PureStateIsZero) { EXPECT_NEAR(von_neumann_entropy(bell()), 0.0, 1e-12); }

TEST(Entropy, MixedQubitIsOneBit) { EXPECT_NEAR(von_neumann_entropy(maximally_mixed({2})), 1.0, 1e-15); }

TEST(Entropy, BiasedQubit) {
  EXPECT_NEAR(von_neumann_entropy(diagonal_state({0.75, 0.25}, {2})), binary_entropy_oracle(0.25), 1e-15);
  EXPECT_NEAR(binary_entropy_oracle(0.25), 0.811278, 1e-6);
}

TEST(Entropy, BoundedByLogDimension) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, Dims{6});
    const double s = von_neumann_entropy(rho);
    EXPECT_GE(s, -1e-9);
    EXPECT_LE(s, std::log2(6.0) + 1e-9);
  }
}

TEST(RelativeEntropy, SelfIsZero) {
  const DensityMatrix rho = random_state(Dims{4}, 3, 7);
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-9);
  EXPECT_NEAR(relative_entropy(bell(), bell()), 0.0, 1e-9);
}

TEST(RelativeEntropy, SupportViolationIsInfinite) {
  EXPECT_TRUE(std::isinf(relative_entropy(maximally_mixed({2}), ket(0, {2}))));
}

TEST(RelativeEntropy, PureAgainstMixed) {
  // -S(|0>) - tr(|0><0| log2(I/2)) = 1
  EXPECT_NEAR(relative_entropy(ket(0, {2}), maximally_mixed({2})), 1.0, 1e-14);
}

TEST(RelativeEntropy, AgainstMaximallyMixedIsLogDMinusEntropy) {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, Dims{2, 3});
    EXPECT_NEAR(relative_entropy(rho, maximally_mixed({2, 3})), std::log2(6.0) - von_neumann_entropy(rho), 1e-10);
  }
}

TEST(RelativeEntropy, DimensionMismatch) {
  EXPECT_THROW(relative_entropy(ket(0, {2}), ket(0, {3})), Error);
}

TEST(RelativeEntropy, NonNegativeAndZeroOnlyForEqualStates) {
  Rng rng(41);
  for (std::size_t d : {2u, 3u, 4u}) {
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix rho = random_state_any_rank(rng, Dims{d});
      const DensityMatrix sigma = random_state(rng, Dims{d}, d);
      const double rel = relative_entropy(rho, sigma);
      EXPECT_GE(rel, -1e-8);
      if (trace_distance(rho, sigma) > 1e-8) {
        EXPECT_GT(rel, 0.0);
      }
    }
  }
}

TEST(RelativeEntropy, DataProcessingUnderPartialTrace) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_state_any_rank(rng, Dims{2, 3});
    const DensityMatrix sigma = random_state(rng, Dims{2, 3}, 6);
    const double full = relative_entropy(rho, sigma);
    const double reduced = relative_entropy(partial_trace(rho, {0}), partial_trace(sigma, {0}));
    EXPECT_LE(reduced, full + 1e-8);
  }
}

TEST(TraceDistance, Examples) {
  const DensityMatrix rho = random_state(Dims{3}, 2, 1);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-14);
  EXPECT_NEAR(trace_distance(ket(0, {2}), ket(1, {2})), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(ket(0, {2}), maximally_mixed({2})), 0.5, 1e-14);
}

TEST(TraceDistance, SymmetricAndTriangle) {
  Rng rng(47);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix a = random_state_any_rank(rng, Dims{4});
    const DensityMatrix b = random_state_any_rank(rng, Dims{4});
    const DensityMatrix c = random_state_any_rank(rng, Dims{4});
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-12);
  }
}

TEST(BinaryEntropy, Values) {
  EXPECT_DOUBLE_EQ(h2(0.5), 1.0);
  EXPECT_EQ(h2(0.0), 0.0);
  EXPECT_EQ(h2(1.0), 0.0);
  EXPECT_THROW(h2(-0.1), Error);
  EXPECT_THROW(h2(1.1), Error);
}

TEST(ThermalEntropyFunction, Values) {
  EXPECT_EQ(g2(0.0), 0.0);
  EXPECT_NEAR(g2(1.0), 2.0 * std::log2(2.0) - 1.0 * std::log2(1.0), 1e-15);
  EXPECT_THROW(g2(-1e-3), Error);
  double prev = g2(0.0);
  for (double x = 0.01; x < 60.0; x *= 1.3) {
    EXPECT_GT(g2(x), prev);
    prev = g2(x);
  }
  // (x+1) h2(x/(x+1)) form
  for (double x : {0.1, 0.5, 2.0, 17.0}) EXPECT_NEAR(g2(x), (x + 1) * binary_entropy_oracle(x / (x + 1)), 1e-12);
}

TEST(Fannes, Values) {
  EXPECT_EQ(fannes_audenaert_bound(0.0, 7), 0.0);
  EXPECT_DOUBLE_EQ(fannes_audenaert_bound(1.0, 2), 1.0);
  EXPECT_DOUBLE_EQ(fannes_audenaert_bound(0.5, 4), 2.0);
  EXPECT_THROW(fannes_audenaert_bound(1.5, 4), Error);
  EXPECT_THROW(fannes_audenaert_bound(0.5, 1), Error);
}

TEST(Fannes, HoldsOnRandomPairs) {
  for (std::size_t d : {2u, 4u, 8u}) {
    Rng rng(1000 + d);
    for (int i = 0; i < 1000; ++i) {
      const DensityMatrix a = random_state_any_rank(rng, Dims{d});
      const DensityMatrix b = random_state_any_rank(rng, Dims{d});
      const double lhs = std::abs(von_neumann_entropy(a) - von_neumann_entropy(b));
      EXPECT_LE(lhs, fannes_audenaert_bound(trace_distance(a, b), d) + 1e-9);
    }
  }
}

TEST(Entropy, AdditiveOverTensorProducts) {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix a = random_state_any_rank(rng, Dims{2});
    const DensityMatrix b = random_state_any_rank(rng, Dims{3});
    EXPECT_NEAR(von_neumann_entropy(tensor(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-8);
  }
}

TEST(ConditionalMutualInformation, ProductStatesVanish) {
  const DensityMatrix a = random_state(Dims{2}, 2, 1), b = random_state(Dims{2}, 2, 2), c = random_state(Dims{3}, 3, 3);
  EXPECT_NEAR(conditional_mutual_information(tensor(tensor(a, b), c)), 0.0, 1e-10);
  const DensityMatrix ab = random_state(Dims{2, 2}, 4, 4);
  EXPECT_NEAR(conditional_mutual_information(tensor(ab, c)), 0.0, 1e-10);
}

TEST(ConditionalMutualInformation, GhzIsOneBit) {
  EXPECT_NEAR(conditional_mutual_information(ghz()), 1.0, 1e-12);
}

TEST(ConditionalMutualInformation, StrongSubadditivity) {
  Rng rng(59);
  for (int i = 0; i < 300; ++i)
    EXPECT_GE(conditional_mutual_information(random_state_any_rank(rng, Dims{2, 2, 2})), -1e-8);
  EXPECT_THROW(conditional_mutual_information(bell()), Error);
}

}  // namespace
}  // namespace qrt
