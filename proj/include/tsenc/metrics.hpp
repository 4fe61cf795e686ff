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
#include <numeric>
#include <span>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"

namespace tsenc::metrics {

/// Area under the ROC curve: the probability that a uniformly random
/// positive outranks a uniformly random negative, with ties counting 1/2.
///
/// Computed from tie-averaged ranks; the numerator is a multiple of 1/2 and
/// exact in double, so the result agrees bit-for-bit with explicit pair
/// counting.
inline double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ShapeError("scores and labels differ in length");
  }
  if (scores.empty()) throw MetricError("auroc of an empty sample");
  for (double s : scores) {
    if (!std::isfinite(s)) throw ValidationError("scores contain non-finite values");
  }
  std::size_t positives = 0;
  for (int lab : labels) {
    if (lab != 0 && lab != 1) throw ValidationError("labels must be 0 or 1");
    positives += static_cast<std::size_t>(lab);
  }
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw MetricError("auroc needs both classes present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum tie-averaged ranks (1-based) of the positive class.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) positive_rank_sum += avg_rank;
    }
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

struct ContingencyTable {
  double a = 0;  // attr = 1, outcome = 1
  double b = 0;  // attr = 1, outcome = 0
  double c = 0;  // attr = 0, outcome = 1
  double d = 0;  // attr = 0, outcome = 0
};

inline ContingencyTable contingency(std::span<const int> attr,
                                    std::span<const int> outcome) {
  if (attr.size() != outcome.size()) {
    throw ShapeError("attr and outcome differ in length");
  }
  if (attr.empty()) throw ValidationError("empty contingency input");
  ContingencyTable t;
  for (std::size_t i = 0; i < attr.size(); ++i) {
    if ((attr[i] != 0 && attr[i] != 1) || (outcome[i] != 0 && outcome[i] != 1)) {
      throw ValidationError("contingency inputs must be 0 or 1");
    }
    if (attr[i] == 1 && outcome[i] == 1) {
      t.a += 1;
    } else if (attr[i] == 1) {
      t.b += 1;
    } else if (outcome[i] == 1) {
      t.c += 1;
    } else {
      t.d += 1;
    }
  }
  return t;
}

/// (a*d)/(b*c) of the 2x2 table. When any cell is zero, the Haldane
/// correction adds 0.5 to every cell so the ratio stays finite and positive.
inline double odds_ratio_table(ContingencyTable t) {
  if (t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0) {
    t.a += 0.5;
    t.b += 0.5;
    t.c += 0.5;
    t.d += 0.5;
  }
  return (t.a * t.d) / (t.b * t.c);
}

inline double odds_ratio(std::span<const int> attr, std::span<const int> outcome) {
  return odds_ratio_table(contingency(attr, outcome));
}

enum class ReduceMode { Averaged, Vectorized };

/// Collapses a batch of series into a plain sample matrix: Averaged gives
/// one per-feature time mean per row (N x F); Vectorized flattens each F x T
/// grid row-major (N x F*T).
inline Mat reduce_series(const std::vector<TimeSeries>& batch, ReduceMode mode) {
  if (batch.empty()) return {};
  const std::size_t f = batch.front().features();
  const std::size_t t = batch.front().steps();
  for (const auto& series : batch) {
    if (series.features() != f || series.steps() != t) {
      throw ShapeError("series batch has inconsistent shapes");
    }
  }
  if (mode == ReduceMode::Averaged) {
    Mat out(batch.size(), f);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      for (std::size_t j = 0; j < f; ++j) {
        const double* row = batch[i].values.row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < t; ++k) sum += row[k];
        out(i, j) = sum / static_cast<double>(t);
      }
    }
    return out;
  }
  Mat out(batch.size(), f * t);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& data = batch[i].values.data();
    std::copy(data.begin(), data.end(), out.row(i));
  }
  return out;
}

}  // namespace tsenc::metrics
