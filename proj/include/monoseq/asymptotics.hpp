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

// The two-term approximation f(n) = sqrt(2n) + log(n)/6 and the machinery
// that measures how far it is from solving the optimality recursion.

#include <span>
#include <vector>

#include "monoseq/value_table.hpp"

namespace monoseq {

/// sqrt(2n) + ln(n)/6. Defined for real n > 0.
double f_approx(double n);

/// f(n) - f(n - x) for 0 <= x < n, evaluated without cancellation.
double f_gap(double n, double x);

/// D_n(x) = 1 - f(n) + f(n - x), strictly decreasing on [0, n) from 1.
double d_n(Index n, double x);

struct RootSolveResult {
  Index n = 0;
  double x_n = 0.0;
  int iterations = 0;
  double residual_D = 0.0;
};

/// The root of D_n by bisection on [0, sqrt(2n)]. Throws std::runtime_error
/// if 200 halvings do not reach |D_n| <= tol.
RootSolveResult solve_xn(Index n, double tol = 1e-12);

/// 1 + max{k >= 0 : 1 - f(n) + f(n-k) >= 0}: the maximizer of H(n, ., f).
Index kstar_from_f(Index n);

enum class DefectScan {
  window,  ///< k within kstar_from_f(n) +- 8
  full,    ///< every k in [1, n]
};

/// Half-width of the k window scanned around kstar_from_f.
inline constexpr Index kDefectWindow = 8;

/// max_k H(n,k,f)/(n+1) - f(n+1).
double defect_at(Index n, DefectScan scan = DefectScan::window);

/// Defects for n = 1..n_max and the constants they imply.
struct DefectProfile {
  Vector<double> defect;  ///< defect(n) at index n; index 0 unused
  double B = 0.0;         ///< max |defect(n)| n^{3/2}
  double B_shifted = 0.0; ///< max |defect(n)| (n+1)^{3/2}
};

DefectProfile defect_profile(Index n_max, DefectScan scan = DefectScan::window);

/// max_{1<=n<=n_max} |defect_at(n)| n^{3/2}. n_max >= 10.
double estimate_B(Index n_max);

/// zeta(3/2), the sum of n^{-3/2}.
inline constexpr double kZeta3Over2 = 2.6123753486854883;

/// Cumulative-defect multiplier used for the |s - f| bound.
inline constexpr double kZetaBoundFactor = 2.62;

struct AsymptoticPoint {
  Index n = 0;
  double s_n = 0.0;
  double f_n = 0.0;
  double residual = 0.0;  ///< s_n - f_n
};

struct AsymptoticScan {
  std::vector<AsymptoticPoint> points;  ///< sorted by n

  double min_residual() const;
  double max_residual() const;
};

/// Roughly `per_decade` integers per factor of ten in [lo, hi], both ends
/// included, strictly increasing.
std::vector<Index> log_spaced(Index lo, Index hi, int per_decade);

AsymptoticScan residual_scan(const ValueTable& table, std::span<const Index> ns);

}  // namespace monoseq
