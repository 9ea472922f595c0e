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

// Random permutations, online execution of selection policies, and
// seeded Monte Carlo estimation of their expected lengths.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoseq/random.hpp"
#include "monoseq/value_table.hpp"

namespace monoseq {

/// A bijection of 1..n, stored as image[i-1] = pi[i].
class Permutation {
 public:
  /// Throws std::invalid_argument unless `image` holds each of 1..n once.
  explicit Permutation(std::vector<Index> image);

  static Permutation identity(Index n);

  Index size() const { return static_cast<Index>(image_.size()); }
  /// pi[i], 1-based.
  Index operator[](Index i) const { return image_[i - 1]; }
  std::span<const Index> image() const { return image_; }

 private:
  std::vector<Index> image_;
};

/// The selections made by a policy: positions are stopping times.
struct SelectionTrace {
  std::vector<Index> accepted_positions;
  std::vector<Index> accepted_values;

  Index length() const { return static_cast<Index>(accepted_values.size()); }
  void accept(Index position, Index value);
  bool is_increasing() const;
};

/// Fisher-Yates shuffle.
Permutation random_permutation(Index n, Xoshiro256& rng);

/// Runs the optimal online rule on `perm`. Tracks only u, the number of
/// unseen values above the last selection. Needs table.n_max() >= perm.size().
SelectionTrace run_policy(const Permutation& perm, const ValueTable& table);

/// Uniform order statistics from normalized exponential partial sums.
struct Embedding {
  std::vector<double> y;  ///< 0 < y[0] < ... < y[n-1] < 1

  Index size() const { return static_cast<Index>(y.size()); }
};

/// Draws exactly n+1 exponentials.
Embedding exponential_embedding(Index n, Xoshiro256& rng);

/// Acceptance rule for sequential selection from n i.i.d. uniforms: with
/// m observations left (the current one included) and window length y
/// above the last selection, take a candidate sitting x into the window?
template <typename P>
concept IidAcceptRule = requires(const P& p, Index m, double y, double x) {
  { p.accept(m, y, x) } -> std::convertible_to<bool>;
  { p.horizon() } -> std::convertible_to<Index>;
};

/// Randomized permutation policy built from an i.i.d. policy: map value v
/// to the v-th uniform order statistic and select whatever the i.i.d.
/// policy selects. The embedding is monotone, so selections stay increasing.
template <IidAcceptRule Policy>
SelectionTrace reduction_Aprime(const Permutation& perm, const Policy& policy, Xoshiro256& rng) {
  const Index n = perm.size();
  if (policy.horizon() < n) throw std::domain_error("i.i.d. policy horizon shorter than n");
  const Embedding embedding = exponential_embedding(n, rng);
  SelectionTrace trace;
  double last = 0.0;
  for (Index i = 1; i <= n; ++i) {
    const double x = embedding.y[perm[i] - 1];
    if (x <= last) continue;
    const double window = 1.0 - last;
    if (policy.accept(n - i + 1, window, std::min(x - last, window))) {
      trace.accept(i, perm[i]);
      last = x;
    }
  }
  return trace;
}

namespace detail {

template <typename T>
Index patience_length(std::span<const T> values) {
  std::vector<T> tails;
  for (const T& v : values) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<Index>(tails.size());
}

}  // namespace detail

/// Longest increasing subsequence length by patience sorting, O(m log m).
/// Throws std::domain_error on repeated values.
template <typename T>
Index lis_patience(std::span<const T> values) {
  std::vector<T> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::domain_error("lis_patience needs distinct values");
  }
  return detail::patience_length(values);
}

/// Permutations are distinct by construction, so no duplicate scan.
inline Index lis_patience(const Permutation& perm) { return detail::patience_length(perm.image()); }

struct SimConfig {
  Index n = 1;
  Index replicates = 1;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct SimReport {
  Index n = 0;
  Index replicates = 0;
  double mean = 0.0;
  double standard_error = 0.0;  ///< sample standard deviation / sqrt(replicates)
  std::uint64_t seed = 0;
  std::string policy_id;
};

/// One replicate: draws from its own stream, returns a selection length.
using ReplicateFn = std::function<Index(Xoshiro256&)>;

/// Replicate r uses stream seed ^ r and lengths are reduced in replicate
/// order, so the report is the same for any thread count.
SimReport monte_carlo(const SimConfig& config, const std::string& policy_id,
                      const ReplicateFn& replicate);

SimReport simulate_optimal(const SimConfig& config, const ValueTable& table);
SimReport simulate_lis(const SimConfig& config);

template <IidAcceptRule Policy>
SimReport simulate_reduction(const SimConfig& config, const Policy& policy) {
  return monte_carlo(config, "reduction", [&](Xoshiro256& rng) {
    const Permutation perm = random_permutation(config.n, rng);
    return reduction_Aprime(perm, policy, rng).length();
  });
}

}  // namespace monoseq
