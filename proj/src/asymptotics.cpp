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

#include "monoseq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace monoseq {

double f_approx(double n) {
  if (!(n > 0.0)) throw std::domain_error("f_approx needs n > 0");
  return std::sqrt(2.0 * n) + std::log(n) / 6.0;
}

double f_gap(double n, double x) {
  if (!(x >= 0.0) || !(x < n)) throw std::domain_error("f_gap needs 0 <= x < n");
  const double rest = n - x;
  return 2.0 * x / (std::sqrt(2.0 * n) + std::sqrt(2.0 * rest)) + std::log1p(x / rest) / 6.0;
}

double d_n(Index n, double x) {
  if (n < 1) throw std::domain_error("d_n needs n >= 1");
  if (!(x >= 0.0) || !(x < static_cast<double>(n))) {
    throw std::domain_error("d_n needs 0 <= x < n");
  }
  return 1.0 - f_gap(static_cast<double>(n), x);
}

RootSolveResult solve_xn(Index n, double tol) {
  if (n < 2) throw std::domain_error("solve_xn needs n >= 2");
  if (!(tol > 0.0)) throw std::domain_error("solve_xn needs tol > 0");

  // D_n(0) = 1 > 0 and D_n(sqrt(2n)) <= 0.
  double lo = 0.0;
  double hi = std::sqrt(2.0 * static_cast<double>(n));
  RootSolveResult result{n, 0.0, 0, 0.0};
  for (int it = 1; it <= 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = d_n(n, mid);
    result = {n, mid, it, d};
    if (hi - lo <= tol && std::abs(d) <= tol) return result;
    if (mid <= lo || mid >= hi) break;
    (d > 0.0 ? lo : hi) = mid;
  }
  if (std::abs(result.residual_D) <= tol) return result;
  throw std::runtime_error("solve_xn did not converge for n=" + std::to_string(n));
}

Index kstar_from_f(Index n) {
  if (n < 2) throw std::domain_error("kstar_from_f needs n >= 2");
  Index k = static_cast<Index>(std::floor(solve_xn(n).x_n));
  // The root can sit within rounding of an integer; settle by direct checks.
  while (k > 0 && d_n(n, static_cast<double>(k)) < 0.0) --k;
  while (k + 1 < n && d_n(n, static_cast<double>(k + 1)) >= 0.0) ++k;
  return k + 1;
}

double defect_at(Index n, DefectScan scan) {
  if (n < 1) throw std::domain_error("defect_at needs n >= 1");
  const double nd = static_cast<double>(n);

  Index k_lo = 1;
  Index k_hi = n;
  if (scan == DefectScan::window && n >= 2) {
    const Index center = kstar_from_f(n);
    k_lo = std::max<Index>(1, center - kDefectWindow);
    k_hi = std::min<Index>(n, center + kDefectWindow);
  }

  // H(n,k,f)/(n+1) = f(n) + (k - sum_{i<k} (f(n) - f(n-i)))/(n+1).
  double gaps = 0.0;
  for (Index i = 1; i < k_lo; ++i) gaps += f_gap(nd, static_cast<double>(i));
  double best = -std::numeric_limits<double>::infinity();
  for (Index k = k_lo; k <= k_hi; ++k) {
    if (k > k_lo) gaps += f_gap(nd, static_cast<double>(k - 1));
    best = std::max(best, (static_cast<double>(k) - gaps) / (nd + 1.0));
  }
  return best - f_gap(nd + 1.0, 1.0);
}

DefectProfile defect_profile(Index n_max, DefectScan scan) {
  if (n_max < 1) throw std::domain_error("defect_profile needs n_max >= 1");
  DefectProfile profile;
  profile.defect.setZero(n_max + 1);
  for (Index n = 1; n <= n_max; ++n) {
    const double d = defect_at(n, scan);
    const double nd = static_cast<double>(n);
    profile.defect(n) = d;
    profile.B = std::max(profile.B, std::abs(d) * nd * std::sqrt(nd));
    profile.B_shifted = std::max(profile.B_shifted, std::abs(d) * (nd + 1.0) * std::sqrt(nd + 1.0));
  }
  return profile;
}

double estimate_B(Index n_max) {
  if (n_max < 10) throw std::domain_error("estimate_B needs n_max >= 10");
  return defect_profile(n_max).B;
}

double AsymptoticScan::min_residual() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : points) m = std::min(m, p.residual);
  return m;
}

double AsymptoticScan::max_residual() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) m = std::max(m, p.residual);
  return m;
}

std::vector<Index> log_spaced(Index lo, Index hi, int per_decade) {
  if (lo < 1 || hi < lo || per_decade < 1) {
    throw std::domain_error("log_spaced needs 1 <= lo <= hi and per_decade >= 1");
  }
  std::vector<Index> out;
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  const auto steps = static_cast<Index>(std::ceil((b - a) * per_decade));
  for (Index i = 0; i <= steps; ++i) {
    const double t = steps == 0 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps);
    const Index n = std::clamp<Index>(std::llround(std::pow(10.0, t)), lo, hi);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

AsymptoticScan residual_scan(const ValueTable& table, std::span<const Index> ns) {
  AsymptoticScan scan;
  scan.points.reserve(ns.size());
  for (Index n : ns) {
    const double s = table.value(n);
    const double f = f_approx(static_cast<double>(n));
    scan.points.push_back({n, s, f, s - f});
  }
  std::sort(scan.points.begin(), scan.points.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return scan;
}

}  // namespace monoseq
