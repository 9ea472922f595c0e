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

// Sequential selection from n i.i.d. Uniform(0,1) values, solved by value
// iteration on the window length y above the last selection:
//
//   v(m, y) = (1 - y) v(m-1, y) + int_0^y max{ v(m-1, y), 1 + v(m-1, y-x) } dx
//
// v(m-1, .) is stored at nodes y_j = j/M and read by linear interpolation.
// Since it is nondecreasing, the accept set {x : 1 + v(m-1, y-x) >= v(m-1, y)}
// is [0, y - t*] for a threshold t*, and the integral of the piecewise
// linear interpolant is taken exactly on either side of t*.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "monoseq/value_table.hpp"

namespace monoseq {

/// Smallest grid the builder accepts.
inline constexpr Index kMinGridSize = 100;

/// Grid size used when none is given.
inline constexpr Index kDefaultGridSize = 2000;

using GridMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class GridStorage {
  full,       ///< keep every row (needed for the acceptance rule)
  last_rows,  ///< keep rows m-1 and m only; shat() still covers every n
};

class IidValueGrid {
 public:
  IidValueGrid(Index horizon, Index grid_size, GridStorage storage);

  Index horizon() const { return horizon_; }
  Index grid_size() const { return grid_size_; }
  bool has_full_rows() const { return storage_ == GridStorage::full; }

  /// v[m][j]; needs full storage (or m == horizon).
  double value(Index m, Index j) const;
  /// v(m, y) by linear interpolation, y in [0, 1].
  double interpolate(Index m, double y) const;
  /// Estimated optimal expected length for n observations, v[n][M].
  double shat(Index n) const;

  /// Policy handle for the randomized permutation policy.
  bool accept(Index m, double y, double x) const;

  /// Rows (m = 0..horizon) by columns (j = 0..M); empty for last_rows.
  const GridMatrix& rows() const { return v_; }
  std::span<const double> shat_values() const { return {shat_.data(), shat_.size()}; }

 private:
  friend IidValueGrid build_grid(Index horizon, Index grid_size, GridStorage storage);

  const double* row(Index m) const;

  Index horizon_;
  Index grid_size_;
  GridStorage storage_;
  GridMatrix v_;
  Eigen::VectorXd last_row_;
  std::vector<double> shat_;  ///< shat_[n] = v[n][M]
};

IidValueGrid build_grid(Index horizon, Index grid_size = kDefaultGridSize,
                        GridStorage storage = GridStorage::full);

/// v[n][M] from a fresh grid.
double shat(Index n, Index grid_size = kDefaultGridSize);
double shat(const IidValueGrid& grid, Index n);

/// Accept iff 1 + v(m-1, y-x) >= v(m-1, y); ties accept.
bool iid_accept(const IidValueGrid& grid, Index m, double y, double x);

/// Largest x with iid_accept true: the acceptance threshold.
double accept_threshold(const IidValueGrid& grid, Index m, double y);

/// shat at grid size M and 2M, with their gap as an error bar.
struct ShatSummary {
  Index grid_size = 0;
  std::vector<double> shat;      ///< at M, index n
  std::vector<double> shat_fine; ///< at 2M
  std::vector<double> err_bar;   ///< |shat_fine - shat|
};

ShatSummary shat_with_error(Index n_max, Index grid_size = kDefaultGridSize);

struct ConcavityResult {
  bool passed = true;
  std::optional<Index> first_violation;  ///< n with shat(n+1)-shat(n) > shat(n)-shat(n-1) + tol
};

/// Checks that first differences of values[1..n_max] do not increase by
/// more than `tolerance[n]` (or a constant tolerance when the span is size 1).
ConcavityResult concavity_check(std::span<const double> values, Index n_max,
                                std::span<const double> tolerance);
ConcavityResult concavity_check(const IidValueGrid& grid, Index n_max, double tolerance);

}  // namespace monoseq
