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
//
// Shared test fixtures: scratch directories and synthetic datasets.

#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/dataset_io.hpp"
#include "tsenc/qsim.hpp"
#include "tsenc/rng.hpp"

namespace fixtures {

/// Self-cleaning scratch directory under the system temp root.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    path_ = base / ("tsenc_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string sub(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

/// Random circuit spec with angles in [0, 2*pi) and random CNOT pairs.
inline tsenc::qsim::CircuitSpec random_circuit(int wires, int layers,
                                               tsenc::Rng& rng) {
  tsenc::qsim::CircuitSpec spec;
  spec.wires = wires;
  spec.layers = layers;
  spec.rx_angles = tsenc::Mat(static_cast<std::size_t>(layers),
                              static_cast<std::size_t>(wires));
  for (std::size_t l = 0; l < spec.rx_angles.rows(); ++l) {
    for (std::size_t w = 0; w < spec.rx_angles.cols(); ++w) {
      spec.rx_angles(l, w) = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    }
  }
  spec.cnot_pattern.resize(static_cast<std::size_t>(layers));
  if (wires >= 2) {
    for (auto& layer : spec.cnot_pattern) {
      const std::size_t gates = rng.index(static_cast<std::size_t>(wires) + 1);
      for (std::size_t g = 0; g < gates; ++g) {
        int c = static_cast<int>(rng.index(static_cast<std::size_t>(wires)));
        int t = static_cast<int>(rng.index(static_cast<std::size_t>(wires)));
        while (t == c) t = static_cast<int>(rng.index(static_cast<std::size_t>(wires)));
        layer.emplace_back(c, t);
      }
    }
  }
  return spec;
}

/// Random multivariate series with values in [lo, hi].
inline tsenc::TimeSeries random_series(std::size_t features, std::size_t steps,
                                       tsenc::Rng& rng, double lo = 0.0,
                                       double hi = 1.0) {
  tsenc::TimeSeries ts;
  ts.values = tsenc::Mat(features, steps);
  for (std::size_t f = 0; f < features; ++f) {
    ts.feature_names.push_back("f" + std::to_string(f));
    for (std::size_t t = 0; t < steps; ++t) ts.values(f, t) = rng.uniform(lo, hi);
  }
  return ts;
}

struct LeakageFixtureConfig {
  std::size_t examples = 2000;
  std::size_t features = 8;
  std::size_t steps = 16;
  std::uint64_t seed = 2026;
  // Task signal: features 0 and 1 track a latent severity that drives the
  // label. Attribute signal: features 2 and 3 carry a mean shift keyed to an
  // independent binary attribute.
  double task_noise = 0.10;
  double label_noise = 0.05;
  double attr_shift = 0.15;
  double attr_noise = 0.10;
  bool plant_attribute = true;  // false leaves the attribute out of the inputs
};

/// Synthetic leakage-study dataset. The task label depends on two features;
/// the binary attribute "grp" is independent of the task label and, when
/// planted, shifts the mean of two other features.
inline tsenc::Dataset make_leakage_dataset(const LeakageFixtureConfig& cfg) {
  tsenc::Rng rng(cfg.seed);
  tsenc::Dataset ds;
  ds.attribute_names = {"grp"};
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  for (std::size_t i = 0; i < cfg.examples; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ex%05zu", i);
    const std::string id(buf);

    const double severity = rng.uniform();
    const int attr = rng.uniform() < 0.5 ? 0 : 1;
    const int label = (severity + rng.normal(0.0, cfg.label_noise)) > 0.5 ? 1 : 0;

    tsenc::TimeSeries ts;
    ts.values = tsenc::Mat(cfg.features, cfg.steps);
    for (std::size_t f = 0; f < cfg.features; ++f) {
      ts.feature_names.push_back("f" + std::to_string(f));
      for (std::size_t t = 0; t < cfg.steps; ++t) {
        double v;
        if (f < 2) {
          v = severity + rng.normal(0.0, cfg.task_noise);
        } else if (f < 4 && cfg.plant_attribute) {
          v = 0.5 + (attr ? cfg.attr_shift : -cfg.attr_shift) +
              rng.normal(0.0, cfg.attr_noise);
        } else {
          v = rng.uniform();
        }
        ts.values(f, t) = clamp01(v);
      }
    }
    ds.examples.emplace_back(id, std::move(ts));
    ds.labels[id] = tsenc::ExampleLabels{label, {{"grp", attr}}};
  }
  ds.validate();
  return ds;
}

/// Writes a dataset in the on-disk layout (per-example CSVs plus labels.csv).
inline void write_dataset(const tsenc::Dataset& ds, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [id, series] : ds.examples) {
    tsenc::io::write_series_csv(dir + "/" + id + ".csv", series);
  }
  tsenc::io::LabelTable table;
  table.attribute_names = ds.attribute_names;
  table.labels = ds.labels;
  tsenc::io::write_labels_csv(dir + "/labels.csv", table);
}

}  // namespace fixtures
