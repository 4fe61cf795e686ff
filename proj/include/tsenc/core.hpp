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
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsenc/error.hpp"
#include "tsenc/sha256.hpp"

namespace tsenc {

/// Dense row-major matrix of doubles. Small and unclever; every hot loop in
/// the library walks raw row pointers.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw ShapeError("Mat::from_rows: ragged input");
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A multivariate time series: F feature signals sampled at T uniform steps.
/// values(f, t) is feature f at step t.
struct TimeSeries {
  std::vector<std::string> feature_names;
  Mat values;  // F x T
  double time_step_hours = 1.0;

  std::size_t features() const { return values.rows(); }
  std::size_t steps() const { return values.cols(); }

  void validate() const {
    if (values.rows() < 1 || values.cols() < 1) {
      throw ValidationError("time series must have at least one feature and one step");
    }
    if (feature_names.size() != values.rows()) {
      throw ValidationError("feature name count does not match row count");
    }
    if (!values.all_finite()) {
      throw ValidationError("time series contains non-finite values");
    }
    if (!(time_step_hours > 0.0)) {
      throw ValidationError("time_step_hours must be positive");
    }
  }
};

/// One fixed-length chunk of a 1-d signal.
struct Segment {
  std::vector<double> values;
};

/// Final-segment handling when the signal length is not a multiple of the
/// segment length.
enum class Padding {
  Reject,  // refuse to segment
  Zero,    // right-pad the last segment with zeros
};

struct SegmentationResult {
  std::vector<Segment> segments;
  std::size_t padded_length = 0;  // segments.size() * n; equals T when exact
};

/// Splits x into ceil(T/n) chunks of length n, in temporal order.
inline SegmentationResult segment_signal(std::span<const double> x, int n,
                                         Padding padding = Padding::Reject) {
  if (n < 1) throw ShapeError("segment length must be >= 1");
  if (x.empty()) throw ShapeError("cannot segment an empty signal");
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("signal contains non-finite values");
  }
  const std::size_t t = x.size();
  const std::size_t nn = static_cast<std::size_t>(n);
  if (t % nn != 0 && padding == Padding::Reject) {
    throw ShapeError("signal length " + std::to_string(t) +
                     " is not a multiple of segment length " + std::to_string(n) +
                     " and padding is disabled");
  }
  const std::size_t count = (t + nn - 1) / nn;
  SegmentationResult out;
  out.segments.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    Segment seg;
    seg.values.assign(nn, 0.0);
    const std::size_t start = j * nn;
    const std::size_t take = std::min(nn, t - start);
    for (std::size_t i = 0; i < take; ++i) seg.values[i] = x[start + i];
    out.segments.push_back(std::move(seg));
  }
  out.padded_length = count * nn;
  return out;
}

/// Temporal concatenation of equal-length segments, truncated to original_T.
inline std::vector<double> concat_segments(const std::vector<Segment>& segments,
                                           std::size_t original_t) {
  if (segments.empty()) throw ShapeError("no segments to concatenate");
  const std::size_t n = segments.front().values.size();
  std::size_t total = 0;
  for (const Segment& s : segments) {
    if (s.values.size() != n) throw ShapeError("segments have unequal lengths");
    total += s.values.size();
  }
  if (total < original_t) {
    throw ShapeError("segments cover " + std::to_string(total) +
                     " values, fewer than the requested length " +
                     std::to_string(original_t));
  }
  std::vector<double> out;
  out.reserve(original_t);
  for (const Segment& s : segments) {
    for (double v : s.values) {
      if (out.size() == original_t) return out;
      out.push_back(v);
    }
  }
  return out;
}

/// Per-feature (min, max) used by min-max normalization.
struct MinMaxStats {
  std::vector<double> min;
  std::vector<double> max;
};

struct NormalizeResult {
  TimeSeries series;
  MinMaxStats stats;
  std::size_t clamped = 0;  // values outside [min, max] under supplied stats
};

/// Per-feature min-max normalization to [0, 1].
///
/// With no supplied stats the (min, max) of each feature row is computed
/// from the input, so the output attains 0 and 1 exactly. Under supplied
/// stats, out-of-range values are clamped and counted. A degenerate feature
/// (max == min) maps to 0.
inline NormalizeResult normalize_minmax(
    const TimeSeries& series,
    const std::optional<MinMaxStats>& supplied = std::nullopt) {
  series.validate();
  const std::size_t f = series.features();
  const std::size_t t = series.steps();

  NormalizeResult out;
  out.series = series;
  if (supplied) {
    if (supplied->min.size() != f || supplied->max.size() != f) {
      throw ShapeError("normalization stats do not match feature count");
    }
    out.stats = *supplied;
  } else {
    out.stats.min.assign(f, 0.0);
    out.stats.max.assign(f, 0.0);
    for (std::size_t i = 0; i < f; ++i) {
      const double* r = series.values.row(i);
      double lo = r[0], hi = r[0];
      for (std::size_t j = 1; j < t; ++j) {
        lo = std::min(lo, r[j]);
        hi = std::max(hi, r[j]);
      }
      out.stats.min[i] = lo;
      out.stats.max[i] = hi;
    }
  }

  for (std::size_t i = 0; i < f; ++i) {
    const double lo = out.stats.min[i];
    const double hi = out.stats.max[i];
    const double range = hi - lo;
    double* r = out.series.values.row(i);
    for (std::size_t j = 0; j < t; ++j) {
      if (range <= 0.0) {
        r[j] = 0.0;
        continue;
      }
      double v = (r[j] - lo) / range;
      if (v < 0.0) {
        v = 0.0;
        ++out.clamped;
      } else if (v > 1.0) {
        v = 1.0;
        ++out.clamped;
      }
      r[j] = v;
    }
  }
  return out;
}

/// Binary task label plus named binary attributes for one example.
struct ExampleLabels {
  int task_label = 0;
  std::map<std::string, int> attributes;

  friend bool operator==(const ExampleLabels&, const ExampleLabels&) = default;
};

/// A labelled collection of equally shaped time series.
struct Dataset {
  std::vector<std::pair<std::string, TimeSeries>> examples;  // sorted by id
  std::map<std::string, ExampleLabels> labels;
  std::vector<std::string> attribute_names;

  void validate() const {
    if (examples.empty()) throw ValidationError("dataset has no examples");
    const TimeSeries& first = examples.front().second;
    first.validate();
    for (const auto& [id, series] : examples) {
      series.validate();
      if (series.features() != first.features() || series.steps() != first.steps()) {
        throw ValidationError("example '" + id + "' has shape " +
                              std::to_string(series.features()) + "x" +
                              std::to_string(series.steps()) +
                              ", expected " + std::to_string(first.features()) +
                              "x" + std::to_string(first.steps()));
      }
      if (series.feature_names != first.feature_names) {
        throw ValidationError("example '" + id + "' has different feature names");
      }
    }
    for (const auto& [id, lab] : labels) {
      bool found = false;
      for (const auto& [eid, _] : examples) {
        if (eid == id) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw ValidationError("label refers to unknown example '" + id + "'");
      }
      for (const std::string& attr : attribute_names) {
        if (!lab.attributes.count(attr)) {
          throw ValidationError("example '" + id + "' is missing attribute '" +
                                attr + "'");
        }
      }
    }
  }
};

/// Train/validation/held-out assignment.
enum class Split { Train, Validation, HeldOut };

/// Deterministic 70/15/15 split keyed on the example id alone: the first
/// eight bytes of SHA-256(id), read big-endian, scaled to [0, 1).
inline Split hash_split(std::string_view example_id) {
  Sha256 h;
  h.update(example_id.data(), example_id.size());
  auto d = h.digest();
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u = (u << 8) | d[i];
  const double frac = static_cast<double>(u >> 11) * 0x1.0p-53;
  if (frac < 0.70) return Split::Train;
  if (frac < 0.85) return Split::Validation;
  return Split::HeldOut;
}

}  // namespace tsenc
