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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "monoseq/core_dp.hpp"

namespace monoseq {
namespace {

// Expectimax over the full history. The state is the exact set of unseen
// values (a bitmask over 1..n) and the last selected value; the next value
// is uniform over the unseen set.
class Expectimax {
 public:
  explicit Expectimax(int n) : n_(n) {}

  Rational solve() { return value((1u << n_) - 1, 0); }

 private:
  Rational value(std::uint32_t unseen, int last) {
    if (unseen == 0) return Rational(0);
    const auto key = std::make_pair(unseen, last);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Rational total(0);
    int count = 0;
    for (int v = 1; v <= n_; ++v) {
      const std::uint32_t bit = 1u << (v - 1);
      if ((unseen & bit) == 0) continue;
      ++count;
      const std::uint32_t rest = unseen & ~bit;
      Rational best = value(rest, last);
      if (v > last) {
        Rational take = 1 + value(rest, v);
        if (take > best) best = take;
      }
      total += best;
    }
    total /= count;
    memo_.emplace(key, total);
    return total;
  }

  int n_;
  std::map<std::pair<std::uint32_t, int>, Rational> memo_;
};

}  // namespace

Rational brute_force_oracle(int n) {
  if (n < 1) throw std::domain_error("brute_force_oracle needs n >= 1");
  if (n > 8) {
    throw std::length_error("brute_force_oracle is limited to n <= 8, got " + std::to_string(n));
  }
  return Expectimax(n).solve();
}

}  // namespace monoseq
