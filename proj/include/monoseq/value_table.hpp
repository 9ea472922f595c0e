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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "monoseq/rational.hpp"

namespace monoseq {

using Index = std::int64_t;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Mode { float64, exact_rational };

inline const char* to_string(Mode mode) {
  return mode == Mode::float64 ? "float64" : "exact-rational";
}

inline Mode parse_mode(const std::string& text) {
  if (text == "float64") return Mode::float64;
  if (text == "exact-rational") return Mode::exact_rational;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

/// The optimal values s(0..n_max) together with their running sums and the
/// maximizing window length used to produce each entry.
///
/// The table is built front to back: entry n+1 depends on every entry
/// before it. A finished table is immutable and safe to share.
///
/// For floating-point scalars the prefix sums are kept as an unevaluated
/// pair (hi + lo), so window sums far out in the table keep full precision
/// even though the running total grows like n^{3/2}.
template <typename Scalar>
class BasicValueTable {
 public:
  static constexpr bool kCompensated = std::is_floating_point_v<Scalar>;

  /// A table holding s(0) = 0 and s(1) = 1, with room for `capacity` entries.
  explicit BasicValueTable(Index capacity = 1, Mode mode = default_mode())
      : mode_(mode) {
    if (capacity < 1) capacity = 1;
    values_.resize(capacity + 1);
    prefix_.resize(capacity + 1);
    if constexpr (kCompensated) prefix_lo_.setZero(capacity + 1);
    kstar_.setZero(capacity + 1);
    values_(0) = Scalar(0);
    prefix_(0) = Scalar(0);
    size_ = 1;
    append(Scalar(1), 0);
  }

  static constexpr Mode default_mode() {
    return std::is_floating_point_v<Scalar> ? Mode::float64 : Mode::exact_rational;
  }

  Index n_max() const { return size_ - 1; }
  Mode mode() const { return mode_; }

  const Scalar& value(Index n) const {
    check_index(n, 0);
    return values_(n);
  }
  const Scalar& operator()(Index n) const { return values_(n); }

  /// s(0) + ... + s(i).
  Scalar prefix_sum(Index i) const {
    check_index(i, 0);
    if constexpr (kCompensated) {
      return prefix_(i) + prefix_lo_(i);
    } else {
      return prefix_(i);
    }
  }

  /// s(first) + ... + s(last), with 1 <= first <= last + 1.
  Scalar window_sum(Index first, Index last) const {
    if (first > last) return Scalar(0);
    if constexpr (kCompensated) {
      // hi(last) and hi(first-1) are within a factor of two of each other
      // whenever the window is short, so the hi difference is exact.
      return (prefix_(last) - prefix_(first - 1)) + (prefix_lo_(last) - prefix_lo_(first - 1));
    } else {
      return prefix_(last) - prefix_(first - 1);
    }
  }

  /// The maximizing window length used to compute s(n); n in [2, n_max].
  Index kstar(Index n) const {
    check_index(n, 2);
    return kstar_(n);
  }

  /// s(0..n_max) as an Eigen vector expression.
  auto values() const { return values_.head(size_); }
  auto kstars() const { return kstar_.head(size_); }

  Index pointer_fallbacks() const { return fallbacks_; }

  /// Appends s(n_max + 1) computed with window length `kstar`.
  void append(const Scalar& value, Index kstar, bool used_fallback = false) {
    if (size_ == values_.size()) grow();
    const Index i = size_;
    values_(i) = value;
    kstar_(i) = kstar;
    if constexpr (kCompensated) {
      // Two-sum of the running hi with the new value, error folded into lo.
      const Scalar hi = prefix_(i - 1);
      const Scalar sum = hi + value;
      const Scalar bv = sum - hi;
      const Scalar err = (hi - (sum - bv)) + (value - bv);
      const Scalar lo = prefix_lo_(i - 1) + err;
      prefix_(i) = sum + lo;
      prefix_lo_(i) = lo - (prefix_(i) - sum);
    } else {
      prefix_(i) = prefix_(i - 1) + value;
    }
    if (used_fallback) ++fallbacks_;
    ++size_;
  }

 private:
  void check_index(Index n, Index lowest) const {
    if (n < lowest || n >= size_) {
      throw std::out_of_range("value table index " + std::to_string(n) + " outside [" +
                              std::to_string(lowest) + ", " + std::to_string(size_ - 1) + "]");
    }
  }

  void grow() {
    const Index cap = values_.size() * 2;
    values_.conservativeResize(cap);
    prefix_.conservativeResize(cap);
    if constexpr (kCompensated) prefix_lo_.conservativeResize(cap);
    kstar_.conservativeResize(cap);
  }

  Vector<Scalar> values_;
  Vector<Scalar> prefix_;
  Vector<Scalar> prefix_lo_;
  Eigen::Matrix<Index, Eigen::Dynamic, 1> kstar_;
  Index size_ = 0;
  Index fallbacks_ = 0;
  Mode mode_;
};

using ValueTable = BasicValueTable<double>;
using ExactValueTable = BasicValueTable<Rational>;

}  // namespace monoseq
