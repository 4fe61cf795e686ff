// Copyright 2026 The tsenc Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"

namespace tsenc::mi {

struct MiEstimate {
  double raw = 0.0;    // can dip below zero on independent samples
  double value = 0.0;  // raw clipped at zero
};

/// Kraskov-Grassberger-Stoegbauer k-nearest-neighbor mutual information
/// between paired samples, in nats:
///
///   I = psi(k) + psi(N) - < psi(n_x + 1) + psi(n_y + 1) >
///
/// where eps_i is the Chebyshev distance from joint point i to its k-th
/// neighbor and n_x, n_y count marginal points strictly inside eps_i.
/// Brute-force O(N^2) neighbor search; every digamma argument is a positive
/// integer, so psi comes from an exact harmonic-number table.
inline MiEstimate estimate_mi(const Mat& x, const Mat& y, int k = 3) {
  const std::size_t n = x.rows();
  if (y.rows() != n) throw ShapeError("X and Y row counts differ");
  if (n == 0 || x.cols() == 0 || y.cols() == 0) {
    throw ShapeError("empty sample matrix");
  }
  if (k < 1) throw MetricError("neighbor count must be >= 1");
  if (n <= static_cast<std::size_t>(k)) {
    throw MetricError("need more than k samples, got " + std::to_string(n));
  }
  if (!x.all_finite() || !y.all_finite()) {
    throw ValidationError("samples contain non-finite values");
  }

  // psi(m) = -gamma + H_{m-1} for integer m >= 1.
  constexpr double kEulerGamma = 0.5772156649015328606;
  std::vector<double> psi(n + 2);
  psi[1] = -kEulerGamma;
  for (std::size_t m = 2; m < psi.size(); ++m) {
    psi[m] = psi[m - 1] + 1.0 / static_cast<double>(m - 1);
  }

  const std::size_t dx = x.cols();
  const std::size_t dy = y.cols();
  std::vector<double> dist_x(n), dist_y(n), dist_joint(n), scratch(n);

  double psi_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i);
    const double* yi = y.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double* xj = x.row(j);
      double mx = 0.0;
      for (std::size_t c = 0; c < dx; ++c) {
        mx = std::max(mx, std::abs(xi[c] - xj[c]));
      }
      const double* yj = y.row(j);
      double my = 0.0;
      for (std::size_t c = 0; c < dy; ++c) {
        my = std::max(my, std::abs(yi[c] - yj[c]));
      }
      dist_x[j] = mx;
      dist_y[j] = my;
      dist_joint[j] = std::max(mx, my);
    }
    dist_joint[i] = std::numeric_limits<double>::infinity();  // exclude self

    scratch = dist_joint;
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    const double eps = scratch[static_cast<std::size_t>(k - 1)];

    std::size_t nx = 0, ny = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (dist_x[j] < eps) ++nx;
      if (dist_y[j] < eps) ++ny;
    }
    psi_sum += psi[nx + 1] + psi[ny + 1];
  }

  MiEstimate out;
  out.raw = psi[static_cast<std::size_t>(k)] + psi[n] -
            psi_sum / static_cast<double>(n);
  out.value = std::max(0.0, out.raw);
  return out;
}

}  // namespace tsenc::mi
