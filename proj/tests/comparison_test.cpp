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

#include <gtest/gtest.h>

#include "monoseq/asymptotics.hpp"
#include "monoseq/comparison.hpp"
#include "monoseq/core_dp.hpp"

namespace monoseq {
namespace {

constexpr Index kN = 20000;

const ValueTable& table() {
  static const ValueTable t = build_table(kN);
  return t;
}

SequenceFn f_fn() {
  return [](Index n) { return f_approx(static_cast<double>(n)); };
}

SequenceFn power_slack(double b) {
  return [b](Index n) { return b * std::pow(static_cast<double>(n), -1.5); };
}

TEST(Comparison, ApproximationWithEstimatedConstantBracketsS) {
  const DefectProfile profile = defect_profile(kN);
  const auto upper = verify_upper_comparison(f_fn(), power_slack(profile.B), table(), kN);
  const auto lower = verify_lower_comparison(f_fn(), power_slack(profile.B), table(), kN);
  EXPECT_EQ(upper.status, ComparisonStatus::holds);
  EXPECT_TRUE(upper.conclusion_violations.empty());
  EXPECT_TRUE(lower.conclusion_violations.empty());
  // With slack B n^{-3/2} indexed at n, the lower step condition at n needs
  // |defect(n)| <= B (n+1)^{-3/2}; it misses where the maximum is attained.
  EXPECT_FALSE(lower.hypothesis_failures.empty());
  EXPECT_TRUE(lower.base_ok);

  const auto merged = merge_brackets(upper, lower);
  EXPECT_TRUE(merged.brackets(table()));
  for (Index n = 1; n <= kN; ++n) {
    ASSERT_LE(merged.bracket_low(n), merged.bracket_high(n));
    ASSERT_LE(std::abs(table()(n) - f_approx(n)), kZetaBoundFactor * profile.B);
  }
  EXPECT_NEAR(upper.B_estimate, profile.B, 1e-9);
}

TEST(Comparison, ShiftedConstantSatisfiesEveryHypothesis) {
  const DefectProfile profile = defect_profile(kN);
  const auto upper = verify_upper_comparison(f_fn(), power_slack(profile.B_shifted), table(), kN);
  const auto lower = verify_lower_comparison(f_fn(), power_slack(profile.B_shifted), table(), kN);
  EXPECT_EQ(upper.status, ComparisonStatus::holds);
  EXPECT_EQ(lower.status, ComparisonStatus::holds);
  EXPECT_TRUE(merge_brackets(upper, lower).brackets(table()));
}

TEST(Comparison, ExactSolutionIsAFixedPoint) {
  const SequenceFn s = [](Index n) { return table()(n); };
  const SequenceFn zero = [](Index) { return 0.0; };
  const auto upper = verify_upper_comparison(s, zero, table(), kN);
  const auto lower = verify_lower_comparison(s, zero, table(), kN);
  EXPECT_EQ(upper.status, ComparisonStatus::holds);
  EXPECT_EQ(lower.status, ComparisonStatus::holds);
  for (Index n = 1; n < kN; ++n) ASSERT_NEAR(upper.measured_defect(n), 0.0, 1e-12) << "n=" << n;
  for (Index n = 1; n <= kN; ++n) {
    ASSERT_EQ(upper.bracket_high(n), table()(n));
    ASSERT_EQ(lower.bracket_low(n), table()(n));
  }
}

TEST(Comparison, ZeroCandidateGivesTrivialBound) {
  const auto report = verify_upper_comparison([](Index) { return 0.0; }, [](Index) { return 1.0; },
                                              table(), 5000);
  EXPECT_EQ(report.status, ComparisonStatus::holds);
  for (Index n = 1; n <= 5000; ++n) ASSERT_EQ(report.bracket_high(n), static_cast<double>(n));
}

TEST(Comparison, SqrtCandidateWithHarmonicSlack) {
  const auto report = verify_lower_comparison(
      [](Index n) { return std::sqrt(2.0 * static_cast<double>(n)); },
      [](Index n) { return 1.0 / static_cast<double>(n); }, table(), kN);
  EXPECT_TRUE(report.conclusion_violations.empty());
  EXPECT_TRUE(report.base_ok);
  EXPECT_NE(report.status, ComparisonStatus::implementation_bug);
}

TEST(Comparison, FlagsAConclusionFailureWithIntactHypotheses) {
  // A table that overstates s by 0.01 everywhere past n = 1.
  ValueTable wrong(200);
  for (Index n = 2; n <= 200; ++n) wrong.append(table()(n) + 0.01, table().kstar(n));
  const SequenceFn s = [](Index n) { return table()(n); };
  const auto report = verify_upper_comparison(s, [](Index) { return 0.0; }, wrong, 200);
  EXPECT_EQ(report.status, ComparisonStatus::implementation_bug);
  ASSERT_FALSE(report.conclusion_violations.empty());
  EXPECT_EQ(report.conclusion_violations.front(), 2);
}

TEST(Comparison, RejectsNegativeSlackAndShortTables) {
  EXPECT_THROW(verify_upper_comparison(f_fn(), [](Index) { return -1.0; }, table(), 10),
               std::domain_error);
  EXPECT_THROW(verify_upper_comparison(f_fn(), power_slack(1.0), table(), kN + 1), std::domain_error);
}

TEST(RecursionDefects, AgreesWithDefectAtForF) {
  Vector<double> g(5002);
  g(0) = 0.0;
  for (Index n = 1; n <= 5001; ++n) g(n) = f_approx(static_cast<double>(n));
  const Vector<double> defects = recursion_defects(g);
  for (Index n = 1; n <= 5000; ++n) ASSERT_NEAR(defects(n), defect_at(n), 1e-12) << "n=" << n;
}

TEST(RecursionDefects, NonMonotoneCandidateUsesFullScan) {
  Vector<double> g(41);
  g(0) = 0.0;
  for (Index n = 1; n <= 40; ++n) g(n) = std::sqrt(static_cast<double>(n)) + (n % 7 == 0 ? -3.0 : 0.0);
  const Vector<double> defects = recursion_defects(g);
  for (Index n = 1; n < 40; ++n) {
    double best = -1e300;
    for (Index k = 1; k <= n; ++k) {
      double h = k + (n - k + 1) * g(n);
      for (Index i = n - k + 1; i <= n; ++i) h += g(i);
      best = std::max(best, h / (n + 1));
    }
    EXPECT_NEAR(defects(n), best - g(n + 1), 1e-12) << "n=" << n;
  }
}

}  // namespace
}  // namespace monoseq
