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

#include <cmath>
#include <cstdint>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"
#include "tsenc/rng.hpp"

namespace tsenc::rproj {

using ProjectionMatrix = Mat;

/// Samples an n x n matrix with i.i.d. Gaussian entries of mean 0 and
/// variance 1/n, filled row by row. Columns are not rescaled.
inline ProjectionMatrix sample_projection(int n, Rng& rng) {
  if (n < 1) throw ShapeError("projection size must be >= 1");
  const auto nn = static_cast<std::size_t>(n);
  const double stddev = 1.0 / std::sqrt(static_cast<double>(n));
  ProjectionMatrix r(nn, nn);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      r(i, j) = rng.normal(0.0, stddev);
    }
  }
  return r;
}

/// Exact matrix-vector product R * segment.
inline std::vector<double> project_segment(const ProjectionMatrix& r,
                                           const Segment& seg) {
  if (r.rows() != r.cols()) throw ShapeError("projection matrix is not square");
  if (r.cols() != seg.values.size()) {
    throw ShapeError("segment length " + std::to_string(seg.values.size()) +
                     " does not match projection size " + std::to_string(r.cols()));
  }
  const std::size_t n = r.rows();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = r.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * seg.values[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace tsenc::rproj
