// Copyright 2026 The monoseq Authors.
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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "monoseq/core_dp.hpp"

namespace monoseq {
namespace {

// s(0..12) from the first-step recursion evaluated in exact fractions by an
// independent script.
const std::vector<Rational>& frozen_exact() {
  static const std::vector<Rational> values = {
      Rational(0),           Rational(1),           Rational(3, 2),
      Rational(2),           Rational(19, 8),       Rational(109, 40),
      Rational(731, 240),    Rational(5599, 1680),  Rational(605, 168),
      Rational(9719, 2520),  Rational(51631, 12600), Rational(399607, 92400),
      Rational(604145, 133056)};
  return values;
}

TEST(BuildTable, ReproducesPublishedTable) {
  const double published[] = {1, 1.5, 2, 2.375, 2.725, 3.046, 3.333, 3.601, 3.857, 4.098};
  const ValueTable table = build_table(10);
  ASSERT_EQ(table.n_max(), 10);
  for (Index n = 1; n <= 10; ++n) EXPECT_NEAR(table(n), published[n - 1], 5e-4) << "n=" << n;
}

TEST(BuildTable, ExactModeMatchesFrozenFractions) {
  const ExactValueTable table = build_table_as<Rational>(12);
  for (Index n = 0; n <= 12; ++n) EXPECT_EQ(table(n), frozen_exact()[n]) << "n=" << n;
  EXPECT_EQ(table.mode(), Mode::exact_rational);
}

TEST(BuildTable, ExactModeIsCapped) {
  EXPECT_THROW(build_table(kExactModeCap + 1, Mode::exact_rational), std::length_error);
  EXPECT_THROW(build_table(0), std::domain_error);
}

TEST(BuildTable, FloatAgreesWithExactThrough2000) {
  const ValueTable fast = build_table(2000);
  const ValueTable exact = build_table(2000, Mode::exact_rational);
  EXPECT_EQ(exact.mode(), Mode::exact_rational);
  for (Index n = 1; n <= 2000; ++n) ASSERT_NEAR(fast(n), exact(n), 1e-10) << "n=" << n;
  for (Index n = 2; n <= 2000; ++n) ASSERT_EQ(fast.kstar(n), exact.kstar(n)) << "n=" << n;
}

TEST(BuildTable, CrossesSqrt2nFirstAt175) {
  const ValueTable table = build_table(175);
  for (Index n = 1; n <= 174; ++n) EXPECT_LE(table(n), std::sqrt(2.0 * n)) << "n=" << n;
  EXPECT_GT(table(175), std::sqrt(350.0));
}

TEST(BuildTable, TableInvariantsHold) {
  const ValueTable table = build_table(100000);
  EXPECT_EQ(table(1), 1.0);
  for (Index n = 2; n <= table.n_max(); ++n) {
    const double gap = table(n) - table(n - 1);
    ASSERT_GT(gap, 0.0) << "n=" << n;
    ASSERT_LE(gap, 1.0) << "n=" << n;
    ASSERT_LE(table(n), static_cast<double>(n));
    const double step = table.prefix_sum(n) - table.prefix_sum(n - 1);
    ASSERT_NEAR(step, table(n), 1e-15 * table.prefix_sum(n)) << "n=" << n;
  }
}

TEST(BuildTable, MaximizerIsNondecreasing) {
  const ValueTable table = build_table(1000000);
  for (Index n = 3; n <= table.n_max(); ++n) {
    ASSERT_LE(table.kstar(n - 1), table.kstar(n)) << "n=" << n;
  }
}

TEST(BuildTable, VerifiedBuildNeedsNoFallback) {
  BuildOptions options;
  options.verify_unimodal = true;
  const ValueTable checked = build_table(3000, Mode::float64, options);
  const ValueTable fast = build_table(3000);
  EXPECT_EQ(checked.pointer_fallbacks(), 0);
  for (Index n = 1; n <= 3000; ++n) ASSERT_EQ(checked(n), fast(n));
}

TEST(HScore, ZeroSequenceLeavesOnlyK) {
  const std::vector<double> zero(6, 0.0);
  EXPECT_EQ(h_score<double>(5, 3, zero), 3.0);
}

TEST(HScore, FirstStepsFromTheTable) {
  const ExactValueTable table = build_table_as<Rational>(5);
  EXPECT_EQ(h_score(table, 1, 1), Rational(3));
  EXPECT_EQ(h_score(table, 1, 1) / 2, Rational(3, 2));
  Rational best = h_score(table, 4, 1);
  for (Index k = 2; k <= 4; ++k) {
    if (h_score(table, 4, k) > best) best = h_score(table, 4, k);
  }
  EXPECT_EQ(best, 5 * table(5));
  EXPECT_NEAR(to_double(best), 5 * 2.725, 1e-12);
}

TEST(HScore, SpanAndTableAgree) {
  const ValueTable table = build_table(200);
  const std::vector<double> values(table.values().data(), table.values().data() + 201);
  for (Index n : {1, 7, 50, 199}) {
    for (Index k = 1; k <= n; k += 3) {
      EXPECT_NEAR(h_score<double>(n, k, values), h_score(table, n, k), 1e-10);
    }
  }
}

TEST(HScore, RejectsWindowOutsideRange) {
  const std::vector<double> zero(6, 0.0);
  EXPECT_THROW(h_score<double>(5, 0, zero), std::domain_error);
  EXPECT_THROW(h_score<double>(5, 6, zero), std::domain_error);
  EXPECT_THROW(h_score<double>(6, 2, zero), std::domain_error);
}

TEST(StepInside, KnownSteps) {
  const ValueTable table = build_table(10);
  EXPECT_DOUBLE_EQ(step_inside(table, 1), 1.5);
  EXPECT_DOUBLE_EQ(step_inside(table, 3), 2.375);
  EXPECT_NEAR(step_inside(table, 9), 4.098, 5e-4);
}

TEST(StepOutside, SingleWindowAtNOne) {
  const ValueTable table = build_table(1);
  const auto step = step_outside(table, 1, 1);
  EXPECT_DOUBLE_EQ(step.value, 1.5);
  EXPECT_EQ(step.kstar, 1);
}

TEST(StepOutside, MatchesInsideFormThrough5000) {
  const ValueTable table = build_table(5001);
  for (Index n = 1; n <= 5000; ++n) {
    const auto outside = step_outside(table, n, n > 1 ? table.kstar(n) : 1);
    ASSERT_NEAR(outside.value, step_inside(table, n), 1e-10) << "n=" << n;
  }
  EXPECT_NEAR(step_outside(table, 9, 1).value, 4.098, 5e-4);
}

TEST(StepOutside, AnyHintGivesTheSameMaximizer) {
  const ValueTable table = build_table(400);
  for (Index n : {2, 10, 97, 399}) {
    const Index expected = step_outside(table, n, 1).kstar;
    for (Index hint : {Index{1}, n / 2, n}) {
      EXPECT_EQ(step_outside(table, n, hint).kstar, expected) << "n=" << n << " hint=" << hint;
    }
  }
}

// The increments d(k) = 1 - s(n) + s(n-k) are nonincreasing in k and the
// smallest argmax of H(n,.,s) is 1 + #{k : d(k) > 0}.
TEST(StepOutside, UnimodalityWitness) {
  const ValueTable table = build_table(5001);
  for (Index n = 2; n <= 5000; ++n) {
    Index positive = 0;
    double previous = 2.0;
    for (Index k = 1; k <= n - 1; ++k) {
      const double d = 1.0 - table(n) + table(n - k);
      ASSERT_LE(d, previous) << "n=" << n << " k=" << k;
      previous = d;
      if (d > 0.0) ++positive;
    }
    Index argmax = 1;
    double best = h_score(table, n, 1);
    for (Index k = 2; k <= n; ++k) {
      const double h = h_score(table, n, k);
      if (h > best * (1 + 1e-15)) {
        best = h;
        argmax = k;
      }
    }
    ASSERT_EQ(table.kstar(n + 1), 1 + positive) << "n=" << n;
    ASSERT_EQ(table.kstar(n + 1), argmax) << "n=" << n;
  }
}

TEST(StepOutside, TieBreaksToSmallestWindow) {
  // At n = 3 the increment for k = 2 is exactly 0, so H(3,2,s) = H(3,3,s).
  const ExactValueTable table = build_table_as<Rational>(4);
  EXPECT_EQ(h_score(table, 3, 2), h_score(table, 3, 3));
  EXPECT_EQ(table.kstar(4), 2);
}

TEST(AcceptDecision, Examples) {
  const ValueTable table = build_table(10);
  EXPECT_TRUE(accept_decision(table, 1, 0));
  EXPECT_TRUE(accept_decision(table, 2, 1));
  EXPECT_FALSE(accept_decision(table, 4, 0));
  EXPECT_TRUE(accept_decision(table, 4, 3));
}

TEST(AcceptDecision, RejectsImpossibleState) {
  const ValueTable table = build_table(10);
  EXPECT_THROW(accept_decision(table, 3, 3), std::domain_error);
  EXPECT_THROW(accept_decision(table, 0, 0), std::domain_error);
  EXPECT_THROW(accept_decision(table, 3, -1), std::domain_error);
  EXPECT_THROW(accept_decision(table, 20, 1), std::domain_error);
}

TEST(BruteForceOracle, SmallValues) {
  EXPECT_EQ(brute_force_oracle(1), Rational(1));
  EXPECT_EQ(brute_force_oracle(2), Rational(3, 2));
  EXPECT_EQ(brute_force_oracle(4), Rational(19, 8));
}

TEST(BruteForceOracle, AgreesWithExactTable) {
  const ExactValueTable table = build_table_as<Rational>(8);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(brute_force_oracle(n), table(n)) << "n=" << n;
}

TEST(BruteForceOracle, RangeErrors) {
  EXPECT_THROW(brute_force_oracle(9), std::length_error);
  EXPECT_THROW(brute_force_oracle(0), std::domain_error);
}

TEST(ValueTable, IndexChecks) {
  const ValueTable table = build_table(5);
  EXPECT_THROW(table.value(6), std::out_of_range);
  EXPECT_THROW(table.kstar(1), std::out_of_range);
  EXPECT_DOUBLE_EQ(table.window_sum(2, 4), 1.5 + 2 + 2.375);
}

}  // namespace
}  // namespace monoseq
