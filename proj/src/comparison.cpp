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

#include "monoseq/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace monoseq {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Running sums of g as an unevaluated pair hi + lo.
class CompensatedPrefix {
 public:
  explicit CompensatedPrefix(const Vector<double>& g) : hi_(g.size()), lo_(g.size()) {
    hi_(0) = 0.0;
    lo_(0) = 0.0;
    for (Index i = 1; i < g.size(); ++i) {
      const double sum = hi_(i - 1) + g(i);
      const double bv = sum - hi_(i - 1);
      const double err = (hi_(i - 1) - (sum - bv)) + (g(i) - bv);
      const double lo = lo_(i - 1) + err;
      hi_(i) = sum + lo;
      lo_(i) = lo - (hi_(i) - sum);
    }
  }

  double window(Index first, Index last) const {
    return (hi_(last) - hi_(first - 1)) + (lo_(last) - lo_(first - 1));
  }

 private:
  Vector<double> hi_;
  Vector<double> lo_;
};

double tolerance(double scale) { return 64.0 * kEps * (1.0 + std::abs(scale)); }

Vector<double> sample(const SequenceFn& fn, Index n_max) {
  Vector<double> out(n_max + 1);
  out(0) = 0.0;
  for (Index n = 1; n <= n_max; ++n) out(n) = fn(n);
  return out;
}

ComparisonReport verify(ComparisonKind kind, const SequenceFn& g_fn, const SequenceFn& delta_fn,
                        const ValueTable& table, Index n_max) {
  if (n_max < 1) throw std::domain_error("comparison needs n_max >= 1");
  if (n_max > table.n_max()) throw std::domain_error("value table shorter than n_max");

  ComparisonReport report;
  report.kind = kind;
  report.n_max = n_max;
  report.g = sample(g_fn, n_max);
  report.delta = sample(delta_fn, n_max);
  for (Index n = 1; n <= n_max; ++n) {
    if (!(report.delta(n) >= 0.0)) throw std::domain_error("delta must be nonnegative");
  }
  report.measured_defect = recursion_defects(report.g);

  report.cumulative.setZero(n_max + 1);
  for (Index n = 1; n <= n_max; ++n) report.cumulative(n) = report.cumulative(n - 1) + report.delta(n);

  const double inf = std::numeric_limits<double>::infinity();
  report.bracket_low.setConstant(n_max + 1, -inf);
  report.bracket_high.setConstant(n_max + 1, inf);
  if (kind == ComparisonKind::upper) {
    report.bracket_high = report.g + report.cumulative;
  } else {
    report.bracket_low = report.g - report.cumulative;
  }
  report.bracket_low(0) = report.bracket_high(0) = 0.0;

  const double g1 = report.g(1);
  const double d1 = report.delta(1);
  report.base_ok = kind == ComparisonKind::upper ? 1.0 <= g1 + d1 + tolerance(g1)
                                                 : g1 - d1 <= 1.0 + tolerance(g1);

  for (Index n = 1; n < n_max; ++n) {
    const double measured = report.measured_defect(n);
    const double n_d = static_cast<double>(n);
    report.B_estimate = std::max(report.B_estimate, std::abs(measured) * n_d * std::sqrt(n_d));
    const double slack = report.delta(n + 1) + tolerance(report.g(n + 1));
    const bool ok = kind == ComparisonKind::upper ? measured <= slack : measured >= -slack;
    if (!ok) report.hypothesis_failures.push_back(n);
  }

  for (Index n = 1; n <= n_max; ++n) {
    const double s = table(n);
    const double tol = tolerance(s) + 64.0 * kEps * std::abs(report.cumulative(n));
    const bool ok = kind == ComparisonKind::upper ? s <= report.bracket_high(n) + tol
                                                  : report.bracket_low(n) <= s + tol;
    if (!ok) report.conclusion_violations.push_back(n);
  }

  if (!report.base_ok || !report.hypothesis_failures.empty()) {
    report.status = ComparisonStatus::hypothesis_failure;
  } else if (!report.conclusion_violations.empty()) {
    report.status = ComparisonStatus::implementation_bug;
  }
  return report;
}

}  // namespace

const char* to_string(ComparisonStatus status) {
  switch (status) {
    case ComparisonStatus::holds: return "holds";
    case ComparisonStatus::hypothesis_failure: return "hypothesis-failure";
    case ComparisonStatus::implementation_bug: return "implementation-bug";
  }
  return "unknown";
}

Vector<double> recursion_defects(const Vector<double>& g) {
  const Index top = g.size() - 1;
  Vector<double> defects;
  defects.setZero(std::max<Index>(top, 1));
  if (top < 2) return defects;
  const CompensatedPrefix prefix(g);

  // H(n,k,g)/(n+1) - g(n+1), rearranged so the O(n) terms cancel first.
  auto score = [&](Index n, Index k) {
    const double kd = static_cast<double>(k);
    const double shortfall = kd * g(n) - prefix.window(n - k + 1, n);
    return (g(n) - g(n + 1)) + (kd - shortfall) / static_cast<double>(n + 1);
  };

  bool monotone = true;
  for (Index n = 1; n < top; ++n) {
    if (n >= 2 && g(n) < g(n - 1)) monotone = false;
    if (monotone) {
      // Increments 1 - g(n) + g(n-k) are nonincreasing in k: find the first
      // k that is n or has a nonpositive increment.
      Index lo = 1;
      Index hi = n;
      while (lo < hi) {
        const Index mid = lo + (hi - lo) / 2;
        if (1.0 - g(n) + g(n - mid) > 0.0) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      defects(n) = score(n, lo);
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (Index k = 1; k <= n; ++k) best = std::max(best, score(n, k));
      defects(n) = best;
    }
  }
  return defects;
}

bool ComparisonReport::brackets(const ValueTable& table) const {
  for (Index n = 1; n <= n_max; ++n) {
    if (table(n) < bracket_low(n) || table(n) > bracket_high(n)) return false;
  }
  return true;
}

ComparisonReport verify_upper_comparison(const SequenceFn& g, const SequenceFn& delta,
                                         const ValueTable& table, Index n_max) {
  return verify(ComparisonKind::upper, g, delta, table, n_max);
}

ComparisonReport verify_lower_comparison(const SequenceFn& g, const SequenceFn& delta,
                                         const ValueTable& table, Index n_max) {
  return verify(ComparisonKind::lower, g, delta, table, n_max);
}

ComparisonReport merge_brackets(const ComparisonReport& upper, const ComparisonReport& lower) {
  if (upper.n_max != lower.n_max) throw std::invalid_argument("reports cover different ranges");
  ComparisonReport merged = upper;
  merged.bracket_low = lower.bracket_low;
  merged.hypothesis_failures.insert(merged.hypothesis_failures.end(),
                                    lower.hypothesis_failures.begin(),
                                    lower.hypothesis_failures.end());
  merged.conclusion_violations.insert(merged.conclusion_violations.end(),
                                      lower.conclusion_violations.begin(),
                                      lower.conclusion_violations.end());
  merged.base_ok = upper.base_ok && lower.base_ok;
  merged.status = std::max(upper.status, lower.status);
  return merged;
}

}  // namespace monoseq
