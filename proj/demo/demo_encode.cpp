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

// Minimal library walkthrough: build a small two-feature series, encode it
// with a quantum key and a random projection key, and print the results.

#include <cmath>
#include <iostream>

#include "tsenc/tsenc.hpp"

namespace {

void print_series(const char* label, const tsenc::TimeSeries& series) {
  std::cout << label << '\n';
  for (std::size_t f = 0; f < series.features(); ++f) {
    std::cout << "  " << series.feature_names[f] << ":";
    for (std::size_t t = 0; t < series.steps(); ++t) {
      std::cout << ' ' << series.values(f, t);
    }
    std::cout << '\n';
  }
}

}  // namespace

int main() {
  using namespace tsenc;

  TimeSeries series;
  series.feature_names = {"heart_rate", "resp_rate"};
  series.values = Mat(2, 8);
  for (std::size_t t = 0; t < 8; ++t) {
    const double phase = static_cast<double>(t) / 8.0;
    series.values(0, t) = 70.0 + 10.0 * std::sin(6.283185307179586 * phase);
    series.values(1, t) = 16.0 + 2.0 * phase;
  }
  print_series("original", series);

  const EncodingKey quantum =
      pipeline::generate_key(Method::Quantum, 4, 7, {2, pipeline::CnotTopology::Ring});
  std::cout << "quantum key fingerprint: " << key_fingerprint(quantum) << '\n';
  print_series("quantum encoded", pipeline::encode_series(series, quantum).series);

  const EncodingKey projection =
      pipeline::generate_key(Method::RandomProjection, 4, 7);
  std::cout << "projection key fingerprint: " << key_fingerprint(projection) << '\n';
  print_series("projection encoded",
               pipeline::encode_series(series, projection).series);

  return 0;
}
