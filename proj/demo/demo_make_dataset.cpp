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

// Writes a synthetic labelled dataset directory suitable for the CLI: a
// latent severity drives the task label through features 0 and 1, and an
// independent binary attribute "grp" shifts features 2 and 3. Use it to try
// the encode and audit commands end to end.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "tsenc/tsenc.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 4) {
    std::cerr << "usage: demo_make_dataset OUT_DIR [EXAMPLES=200] [SEED=2026]\n";
    return 2;
  }
  const std::string out_dir = argv[1];
  const std::size_t examples = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2026;
  if (examples == 0) {
    std::cerr << "usage error: EXAMPLES must be positive\n";
    return 2;
  }

  constexpr std::size_t kFeatures = 8;
  constexpr std::size_t kSteps = 16;
  const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };

  tsenc::Rng rng(seed);
  tsenc::Dataset ds;
  ds.attribute_names = {"grp"};
  for (std::size_t i = 0; i < examples; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ex%05zu", i);
    const std::string id(buf);

    const double severity = rng.uniform();
    const int attr = rng.uniform() < 0.5 ? 0 : 1;
    const int label = (severity + rng.normal(0.0, 0.05)) > 0.5 ? 1 : 0;

    tsenc::TimeSeries ts;
    ts.values = tsenc::Mat(kFeatures, kSteps);
    for (std::size_t f = 0; f < kFeatures; ++f) {
      ts.feature_names.push_back("f" + std::to_string(f));
      for (std::size_t t = 0; t < kSteps; ++t) {
        double v;
        if (f < 2) {
          v = severity + rng.normal(0.0, 0.10);
        } else if (f < 4) {
          v = 0.5 + (attr == 1 ? 0.15 : -0.15) + rng.normal(0.0, 0.10);
        } else {
          v = rng.uniform();
        }
        ts.values(f, t) = clamp01(v);
      }
    }
    ds.examples.emplace_back(id, ts);
    ds.labels[id] = tsenc::ExampleLabels{label, {{"grp", attr}}};
  }

  std::filesystem::create_directories(out_dir);
  for (const auto& [id, series] : ds.examples) {
    tsenc::io::write_series_csv(out_dir + "/" + id + ".csv", series);
  }
  tsenc::io::LabelTable table;
  table.attribute_names = ds.attribute_names;
  table.labels = ds.labels;
  tsenc::io::write_labels_csv(out_dir + "/labels.csv", table);

  std::cerr << "wrote " << examples << " examples to " << out_dir << '\n';
  return 0;
}
