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

#pragma once

// Comparison principles: a candidate g that nearly solves the optimality
// recursion, with per-step slack delta, brackets s within the running sum
// of the slack.
//
//   upper:  max_k H(n,k,g)/(n+1) <= g(n+1) + delta(n+1),  1 <= g(1) + delta(1)
//           =>  s(n) <= g(n) + sum_{i<=n} delta(i)
//   lower:  g(n+1) - delta(n+1) <= max_k H(n,k,g)/(n+1),  g(1) - delta(1) <= 1
//           =>  g(n) - sum_{i<=n} delta(i) <= s(n)
//
// Hypotheses are checked at every n rather than assumed. A hypothesis
// failure is a property of (g, delta); a failed conclusion with every
// hypothesis intact means the table or this code is wrong.

#include <functional>
#include <vector>

#include "monoseq/value_table.hpp"

namespace monoseq {

using SequenceFn = std::function<double(Index)>;

enum class ComparisonKind { upper, lower };

enum class ComparisonStatus {
  holds,               ///< hypotheses and conclusion all hold
  hypothesis_failure,  ///< some hypothesis fails; conclusion not guaranteed
  implementation_bug,  ///< hypotheses hold but the conclusion fails
};

const char* to_string(ComparisonStatus status);

struct ComparisonReport {
  ComparisonKind kind = ComparisonKind::upper;
  Index n_max = 0;
  // Sequences below are indexed by n; index 0 is unused.
  Vector<double> g;
  Vector<double> delta;            ///< supplied slack
  Vector<double> measured_defect;  ///< max_k H(n,k,g)/(n+1) - g(n+1), n < n_max
  Vector<double> cumulative;       ///< delta(1) + ... + delta(n)
  Vector<double> bracket_low;
  Vector<double> bracket_high;
  double B_estimate = 0.0;         ///< max |measured_defect(n)| n^{3/2}

  bool base_ok = true;
  std::vector<Index> hypothesis_failures;  ///< n where the step-n condition fails
  std::vector<Index> conclusion_violations;
  ComparisonStatus status = ComparisonStatus::holds;

  /// True if bracket_low(n) <= s(n) <= bracket_high(n) for n in 1..n_max.
  bool brackets(const ValueTable& table) const;
};

/// Checks the upper principle against `table` on n = 1..n_max.
ComparisonReport verify_upper_comparison(const SequenceFn& g, const SequenceFn& delta,
                                         const ValueTable& table, Index n_max);
ComparisonReport verify_lower_comparison(const SequenceFn& g, const SequenceFn& delta,
                                         const ValueTable& table, Index n_max);

/// Bracket from an upper report's high side and a lower report's low side.
ComparisonReport merge_brackets(const ComparisonReport& upper, const ComparisonReport& lower);

/// max_k H(n,k,g)/(n+1) - g(n+1) for every n in 1..g.size()-2, where
/// g holds g(0..N). Uses the k search when g is nondecreasing up to n and a
/// full scan otherwise.
Vector<double> recursion_defects(const Vector<double>& g);

}  // namespace monoseq
