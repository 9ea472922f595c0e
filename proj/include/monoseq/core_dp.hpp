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

// Exact optimal values for online selection of an increasing subsequence
// from a uniformly random permutation.
//
// s(n+1) = 1/(n+1) * max_{1<=k<=n} H(n, k, s), where
// H(n, k, g) = k + (n-k+1) g(n) + sum_{i=n-k+1}^{n} g(i).

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>

#include "monoseq/rational.hpp"
#include "monoseq/value_table.hpp"

namespace monoseq {

template <typename Scalar>
struct StepResult {
  Scalar value;
  Index kstar = 0;
  bool used_fallback = false;
};

struct BuildOptions {
  /// Checks that the increments H(n,k+1)-H(n,k) are nonincreasing in k at
  /// every step, and falls back to a full argmax scan where they are not.
  /// Costs O(n) per step.
  bool verify_unimodal = false;
};

/// Largest table the exact-rational mode will build.
inline constexpr Index kExactModeCap = 2000;

namespace detail {

inline void require_window(Index n, Index k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error("window length k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(n) + "]");
  }
}

// H(n,k+1,s) - H(n,k,s) for 1 <= k <= n-1.
template <typename Scalar>
Scalar increment(const BasicValueTable<Scalar>& table, Index n, Index k) {
  return Scalar(1) - table(n) + table(n - k);
}

// H(n,k,s)/(n+1), written as s(n) plus a correction so the large terms
// cancel before the division.
template <typename Scalar>
Scalar normalized_score(const BasicValueTable<Scalar>& table, Index n, Index k) {
  const Scalar shortfall = Scalar(k) * table(n) - table.window_sum(n - k + 1, n);
  return table(n) + (Scalar(k) - shortfall) / Scalar(n + 1);
}

template <typename Scalar>
StepResult<Scalar> full_scan(const BasicValueTable<Scalar>& table, Index n) {
  Index best_k = 1;
  Scalar best = normalized_score(table, n, 1);
  for (Index k = 2; k <= n; ++k) {
    Scalar candidate = normalized_score(table, n, k);
    if (candidate > best) {
      best = candidate;
      best_k = k;
    }
  }
  return {best, best_k, false};
}

}  // namespace detail

/// H(n, k, g) for a value sequence g defined on 0..n.
template <typename Scalar>
Scalar h_score(Index n, Index k, std::span<const Scalar> g) {
  detail::require_window(n, k);
  if (static_cast<Index>(g.size()) <= n) {
    throw std::domain_error("h_score needs g on 0.." + std::to_string(n));
  }
  Scalar total = Scalar(k) + Scalar(n - k + 1) * g[n];
  for (Index i = n - k + 1; i <= n; ++i) total += g[i];
  return total;
}

/// H(n, k, s) read off the table's prefix sums.
template <typename Scalar>
Scalar h_score(const BasicValueTable<Scalar>& table, Index n, Index k) {
  detail::require_window(n, k);
  return Scalar(k) + Scalar(n - k + 1) * table.value(n) + table.window_sum(n - k + 1, n);
}

/// s(n+1) by first-step analysis: average over the first value of the
/// better of rejecting it or accepting it. O(n).
template <typename Scalar>
Scalar step_inside(const BasicValueTable<Scalar>& table, Index n) {
  const Scalar& keep = table.value(n);
  Scalar total(0);
  for (Index k = 1; k <= n + 1; ++k) {
    const Scalar take = Scalar(1) + table(n + 1 - k);
    total += take > keep ? take : keep;
  }
  return total / Scalar(n + 1);
}

/// s(n+1) from the max-over-k form, with the smallest maximizing k.
///
/// Because s is increasing, the increments 1 - s(n) + s(n-k) are
/// nonincreasing in k, so the maximizer is the first k whose increment is
/// not positive. The search walks from `k_hint`; seeded with the previous
/// maximizer it moves O(1) steps on average.
template <typename Scalar>
StepResult<Scalar> step_outside(const BasicValueTable<Scalar>& table, Index n, Index k_hint,
                                const BuildOptions& options = {}) {
  if (n < 1 || n > table.n_max()) {
    throw std::domain_error("step_outside needs the table through n=" + std::to_string(n));
  }
  if (options.verify_unimodal) {
    for (Index k = 2; k <= n - 1; ++k) {
      if (detail::increment(table, n, k) > detail::increment(table, n, k - 1)) {
        auto result = detail::full_scan(table, n);
        result.used_fallback = true;
        return result;
      }
    }
  }
  Index k = std::clamp<Index>(k_hint, 1, n);
  while (k > 1 && !(detail::increment(table, n, k - 1) > Scalar(0))) --k;
  while (k < n && detail::increment(table, n, k) > Scalar(0)) ++k;
  return {detail::normalized_score(table, n, k), k, false};
}

/// s(0..n_max) by the pointer recursion. O(n_max) time and memory.
template <typename Scalar>
BasicValueTable<Scalar> build_table_as(Index n_max, const BuildOptions& options = {}) {
  if (n_max < 1) throw std::domain_error("n_max must be at least 1");
  if constexpr (!std::is_floating_point_v<Scalar>) {
    if (n_max > kExactModeCap) {
      throw std::length_error("exact-rational tables are capped at n_max=" +
                              std::to_string(kExactModeCap));
    }
  }
  BasicValueTable<Scalar> table(n_max);
  Index hint = 1;
  for (Index n = 1; n < n_max; ++n) {
    auto step = step_outside(table, n, hint, options);
    table.append(step.value, step.kstar, step.used_fallback);
    hint = step.kstar;
  }
  return table;
}

/// Float table in either mode; exact mode computes in rationals and rounds.
ValueTable build_table(Index n_max, Mode mode = Mode::float64, const BuildOptions& options = {});

/// Rounds an exact table to doubles, keeping the maximizers and the mode tag.
ValueTable to_float_table(const ExactValueTable& exact);

/// Optimal rule with u unseen values above the last selection, u_above of
/// which exceed the current candidate. Accept iff 1 + s(u_above) >= s(u-1).
template <typename Scalar>
bool accept_decision(const BasicValueTable<Scalar>& table, Index u, Index u_above) {
  if (u < 1 || u_above < 0 || u_above >= u) {
    throw std::domain_error("accept_decision needs 0 <= u_above < u, got u=" + std::to_string(u) +
                            " u_above=" + std::to_string(u_above));
  }
  if (u - 1 > table.n_max()) throw std::domain_error("value table too short for u");
  return Scalar(1) + table(u_above) >= table(u - 1);
}

/// s(n) by expectimax over every observation history, independent of the
/// recursion above. n in [1, 8].
Rational brute_force_oracle(int n);

}  // namespace monoseq
