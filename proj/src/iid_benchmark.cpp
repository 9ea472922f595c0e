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

#include "monoseq/iid_benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monoseq {
namespace {

// One Bellman step: next[j] = v(m, j/M) from prev[j] = v(m-1, j/M).
void bellman_row(const double* prev, double* next, Index grid_size, std::vector<double>& cumulative) {
  const double h = 1.0 / static_cast<double>(grid_size);
  // cumulative[i] = integral of the interpolant of prev over [0, i/M].
  cumulative[0] = 0.0;
  for (Index i = 1; i <= grid_size; ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * h * (prev[i - 1] + prev[i]);
  }

  Index i = 0;
  for (Index j = 0; j <= grid_size; ++j) {
    const double y = static_cast<double>(j) / static_cast<double>(grid_size);
    const double keep = prev[j];
    // First node where accepting beats keeping; nondecreasing in j.
    while (i > 0 && 1.0 + prev[i - 1] >= keep) --i;
    while (1.0 + prev[i] < keep) ++i;

    double t_star = 0.0;
    double c_star = 0.0;
    if (i > 0) {
      const double a = prev[i - 1];
      const double b = prev[i];
      const double frac = (keep - 1.0 - a) / (b - a);
      t_star = (static_cast<double>(i - 1) + frac) * h;
      c_star = cumulative[i - 1] + 0.5 * frac * h * (a + (keep - 1.0));
    }
    // Reject below t* (value keep), accept above it (value 1 + v(m-1, t)).
    const double inside = keep * t_star + (y - t_star) + (cumulative[j] - c_star);
    next[j] = (1.0 - y) * keep + inside;
  }
}

double interpolate_row(const double* row, Index grid_size, double y) {
  const double pos = std::clamp(y, 0.0, 1.0) * static_cast<double>(grid_size);
  const auto j = static_cast<Index>(pos);
  if (j >= grid_size) return row[grid_size];
  const double frac = pos - static_cast<double>(j);
  return row[j] + frac * (row[j + 1] - row[j]);
}

}  // namespace

IidValueGrid::IidValueGrid(Index horizon, Index grid_size, GridStorage storage)
    : horizon_(horizon), grid_size_(grid_size), storage_(storage) {}

const double* IidValueGrid::row(Index m) const {
  if (m < 0 || m > horizon_) {
    throw std::domain_error("grid row " + std::to_string(m) + " outside [0, " +
                            std::to_string(horizon_) + "]");
  }
  if (storage_ == GridStorage::full) return v_.row(m).data();
  if (m == horizon_) return last_row_.data();
  throw std::logic_error("grid was built without full row storage");
}

double IidValueGrid::value(Index m, Index j) const {
  if (j < 0 || j > grid_size_) throw std::domain_error("grid column out of range");
  return row(m)[j];
}

double IidValueGrid::interpolate(Index m, double y) const {
  return interpolate_row(row(m), grid_size_, y);
}

double IidValueGrid::shat(Index n) const {
  if (n < 0 || n > horizon_) {
    throw std::domain_error("grid horizon " + std::to_string(horizon_) + " shorter than n=" +
                            std::to_string(n));
  }
  return shat_[n];
}

bool IidValueGrid::accept(Index m, double y, double x) const { return iid_accept(*this, m, y, x); }

IidValueGrid build_grid(Index horizon, Index grid_size, GridStorage storage) {
  if (grid_size < kMinGridSize) {
    throw std::invalid_argument("grid size must be at least " + std::to_string(kMinGridSize));
  }
  if (horizon < 0) throw std::domain_error("horizon must be nonnegative");

  IidValueGrid grid(horizon, grid_size, storage);
  grid.shat_.assign(horizon + 1, 0.0);
  std::vector<double> cumulative(grid_size + 1);

  if (storage == GridStorage::full) {
    grid.v_.setZero(horizon + 1, grid_size + 1);
    for (Index m = 1; m <= horizon; ++m) {
      bellman_row(grid.v_.row(m - 1).data(), grid.v_.row(m).data(), grid_size, cumulative);
      grid.shat_[m] = grid.v_(m, grid_size);
    }
  } else {
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(grid_size + 1);
    Eigen::VectorXd next(grid_size + 1);
    for (Index m = 1; m <= horizon; ++m) {
      bellman_row(prev.data(), next.data(), grid_size, cumulative);
      grid.shat_[m] = next(grid_size);
      prev.swap(next);
    }
    grid.last_row_ = prev;
  }
  return grid;
}

double shat(const IidValueGrid& grid, Index n) { return grid.shat(n); }

double shat(Index n, Index grid_size) {
  return build_grid(n, grid_size, GridStorage::last_rows).shat(n);
}

bool iid_accept(const IidValueGrid& grid, Index m, double y, double x) {
  if (m < 1) throw std::domain_error("iid_accept needs m >= 1");
  if (!(x >= 0.0) || !(y <= 1.0) || x > y) throw std::domain_error("iid_accept needs 0 <= x <= y <= 1");
  return 1.0 + grid.interpolate(m - 1, y - x) >= grid.interpolate(m - 1, y);
}

double accept_threshold(const IidValueGrid& grid, Index m, double y) {
  if (iid_accept(grid, m, y, y)) return y;
  double lo = 0.0;  // accepted
  double hi = y;    // rejected
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (iid_accept(grid, m, y, mid) ? lo : hi) = mid;
  }
  return lo;
}

ShatSummary shat_with_error(Index n_max, Index grid_size) {
  const IidValueGrid coarse = build_grid(n_max, grid_size, GridStorage::last_rows);
  const IidValueGrid fine = build_grid(n_max, 2 * grid_size, GridStorage::last_rows);
  ShatSummary summary;
  summary.grid_size = grid_size;
  summary.shat.assign(coarse.shat_values().begin(), coarse.shat_values().end());
  summary.shat_fine.assign(fine.shat_values().begin(), fine.shat_values().end());
  summary.err_bar.resize(n_max + 1);
  for (Index n = 0; n <= n_max; ++n) {
    summary.err_bar[n] = std::abs(summary.shat_fine[n] - summary.shat[n]);
  }
  return summary;
}

ConcavityResult concavity_check(std::span<const double> values, Index n_max,
                                std::span<const double> tolerance) {
  if (n_max >= static_cast<Index>(values.size())) {
    throw std::domain_error("concavity_check needs values through n_max");
  }
  if (tolerance.empty()) throw std::invalid_argument("concavity_check needs a tolerance");
  ConcavityResult result;
  for (Index n = 1; n < n_max; ++n) {
    const double tol = tolerance.size() == 1 ? tolerance[0] : tolerance[n];
    const double before = values[n] - values[n - 1];
    const double after = values[n + 1] - values[n];
    if (after > before + tol) {
      result.passed = false;
      result.first_violation = n;
      break;
    }
  }
  return result;
}

ConcavityResult concavity_check(const IidValueGrid& grid, Index n_max, double tolerance) {
  const double tol[] = {tolerance};
  return concavity_check(grid.shat_values(), n_max, tol);
}

}  // namespace monoseq
