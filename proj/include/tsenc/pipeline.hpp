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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/dataset_io.hpp"
#include "tsenc/error.hpp"
#include "tsenc/key.hpp"
#include "tsenc/qsim.hpp"
#include "tsenc/rng.hpp"
#include "tsenc/rproj.hpp"

namespace tsenc::pipeline {

enum class CnotTopology { Ring, Chain };

struct CircuitParams {
  int layers = 2;
  CnotTopology topology = CnotTopology::Ring;
};

/// Entanglement pairs for one layer. Ring wraps the last wire back to the
/// first; chain stops at the last wire. A single wire gets no pairs.
inline std::vector<std::pair<int, int>> cnot_layer(int wires, CnotTopology topology) {
  std::vector<std::pair<int, int>> pairs;
  if (wires < 2) return pairs;
  for (int k = 0; k + 1 < wires; ++k) pairs.emplace_back(k, k + 1);
  if (topology == CnotTopology::Ring) pairs.emplace_back(wires - 1, 0);
  return pairs;
}

/// Materializes a fully self-contained key from a seed. All randomness is
/// spent here: a random_projection key stores the sampled matrix, a quantum
/// key stores RX angles drawn uniformly from [0, 2*pi) in layer-major order.
inline EncodingKey generate_key(Method method, int segment_len, std::uint64_t seed,
                                const CircuitParams& params = {},
                                bool normalize = true) {
  if (segment_len < 1) throw ConfigError("segment length must be >= 1");
  EncodingKey key;
  key.method = method;
  key.segment_len = segment_len;
  key.normalize = normalize;
  key.provenance_seed = static_cast<std::int64_t>(seed);
  Rng rng(seed);
  switch (method) {
    case Method::RandomProjection:
      key.projection = rproj::sample_projection(segment_len, rng);
      break;
    case Method::Quantum: {
      if (segment_len > qsim::kMaxWires) {
        throw ConfigError("quantum keys support segment lengths up to " +
                          std::to_string(qsim::kMaxWires));
      }
      if (params.layers < 0) throw ConfigError("layer count must be >= 0");
      qsim::CircuitSpec spec;
      spec.wires = segment_len;
      spec.layers = params.layers;
      spec.rx_angles = Mat(static_cast<std::size_t>(params.layers),
                           static_cast<std::size_t>(segment_len));
      for (std::size_t l = 0; l < spec.rx_angles.rows(); ++l) {
        for (std::size_t k = 0; k < spec.rx_angles.cols(); ++k) {
          spec.rx_angles(l, k) = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
      }
      spec.cnot_pattern.assign(static_cast<std::size_t>(params.layers),
                               cnot_layer(segment_len, params.topology));
      key.circuit = std::move(spec);
      break;
    }
  }
  key.validate();
  return key;
}

/// Encodes one segment through the key's backend.
inline std::vector<double> encode_segment(const EncodingKey& key, const Segment& seg) {
  if (key.method == Method::RandomProjection) {
    return rproj::project_segment(*key.projection, seg);
  }
  return qsim::run_circuit(*key.circuit, seg.values);
}

/// Segment, encode each segment independently, concatenate back to length T.
inline std::vector<double> encode_signal(std::span<const double> x,
                                         const EncodingKey& key,
                                         Padding padding = Padding::Reject) {
  key.validate();
  auto segmentation = segment_signal(x, key.segment_len, padding);
  std::vector<Segment> encoded;
  encoded.reserve(segmentation.segments.size());
  for (const Segment& seg : segmentation.segments) {
    encoded.push_back(Segment{encode_segment(key, seg)});
  }
  return concat_segments(encoded, x.size());
}

struct SeriesEncodeOptions {
  Padding padding = Padding::Reject;
  std::optional<MinMaxStats> stats;  // used only when the key normalizes
};

struct EncodedSeries {
  TimeSeries series;
  std::optional<MinMaxStats> stats;
  std::size_t clamped = 0;
};

/// Applies the key to every feature signal of a series. Signals never mix:
/// output row f is a function of input row f alone. When the key normalizes,
/// min-max stats are taken from the series itself unless supplied.
inline EncodedSeries encode_series(const TimeSeries& series, const EncodingKey& key,
                                   const SeriesEncodeOptions& options = {}) {
  key.validate();
  series.validate();

  EncodedSeries out;
  const TimeSeries* input = &series;
  NormalizeResult normalized;
  if (key.normalize) {
    normalized = normalize_minmax(series, options.stats);
    out.stats = normalized.stats;
    out.clamped = normalized.clamped;
    input = &normalized.series;
  }

  out.series.feature_names = series.feature_names;
  out.series.time_step_hours = series.time_step_hours;
  const std::size_t f = input->features();
  const std::size_t t = input->steps();
  out.series.values = Mat(f, t);
  for (std::size_t i = 0; i < f; ++i) {
    auto encoded = encode_signal(std::span(input->values.row(i), t), key,
                                 options.padding);
    for (std::size_t j = 0; j < t; ++j) out.series.values(i, j) = encoded[j];
  }
  return out;
}

struct DatasetEncodeOptions {
  Padding padding = Padding::Reject;
  int workers = 1;
  std::optional<MinMaxStats> stats;  // default: computed over the whole dataset
};

/// Per-feature (min, max) pooled over every example of a dataset.
inline MinMaxStats dataset_stats(const Dataset& ds) {
  const std::size_t f = ds.examples.front().second.features();
  MinMaxStats stats;
  stats.min.assign(f, 0.0);
  stats.max.assign(f, 0.0);
  bool first = true;
  for (const auto& [id, series] : ds.examples) {
    for (std::size_t i = 0; i < f; ++i) {
      const double* row = series.values.row(i);
      for (std::size_t j = 0; j < series.steps(); ++j) {
        if (first && j == 0) {
          stats.min[i] = row[0];
          stats.max[i] = row[0];
        }
        stats.min[i] = std::min(stats.min[i], row[j]);
        stats.max[i] = std::max(stats.max[i], row[j]);
      }
    }
    first = false;
  }
  return stats;
}

/// Encodes a dataset directory into out_dir: one encoded CSV per example,
/// labels.csv copied verbatim, and a manifest recording the key fingerprint,
/// normalization stats, and clamp count.
///
/// Examples are independent, so any worker count yields byte-identical
/// output files.
inline io::Manifest encode_dataset(const std::string& in_dir, const EncodingKey& key,
                                   const std::string& out_dir,
                                   const DatasetEncodeOptions& options = {}) {
  namespace fs = std::filesystem;
  key.validate();
  if (options.workers < 1) throw ConfigError("worker count must be >= 1");
  Dataset ds = io::load_dataset(in_dir);

  SeriesEncodeOptions series_options;
  series_options.padding = options.padding;
  if (key.normalize) {
    series_options.stats = options.stats ? *options.stats : dataset_stats(ds);
  }

  const std::size_t count = ds.examples.size();
  std::vector<EncodedSeries> encoded(count);
  std::vector<std::string> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        encoded[i] = encode_series(ds.examples[i].second, key, series_options);
      } catch (const std::exception& e) {
        failures[i] = "example '" + ds.examples[i].first + "': " + e.what();
      }
    }
  };
  const int threads = std::min<int>(options.workers, static_cast<int>(count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& failure : failures) {
    if (!failure.empty()) throw ValidationError(failure);
  }

  fs::create_directories(out_dir);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < count; ++i) {
    clamped += encoded[i].clamped;
    io::write_series_csv((fs::path(out_dir) / (ds.examples[i].first + ".csv")).string(),
                         encoded[i].series);
  }

  const auto labels_in = fs::path(in_dir) / "labels.csv";
  if (fs::exists(labels_in)) {
    std::ifstream src(labels_in, std::ios::binary);
    std::ofstream dst(fs::path(out_dir) / "labels.csv", std::ios::binary);
    if (!src || !dst) throw IoError("cannot copy labels.csv");
    dst << src.rdbuf();
  }

  const TimeSeries& first = ds.examples.front().second;
  io::Manifest manifest;
  manifest.examples = count;
  manifest.features = first.features();
  manifest.time_steps = first.steps();
  manifest.feature_names = first.feature_names;
  manifest.method = method_name(key.method);
  manifest.segment_len = key.segment_len;
  manifest.normalize = key.normalize;
  manifest.stats = series_options.stats;
  manifest.clamped = clamped;
  manifest.key_fingerprint = key_fingerprint(key);
  const std::size_t n = static_cast<std::size_t>(key.segment_len);
  if (first.steps() % n != 0) {
    manifest.padded_time_steps = ((first.steps() + n - 1) / n) * n;
  }
  io::write_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
  return manifest;
}

}  // namespace tsenc::pipeline
