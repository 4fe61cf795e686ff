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
#include <numbers>
#include <random>

namespace tsenc {

/// Deterministic random source.
///
/// std::mt19937_64 supplies the bit stream (its output sequence is pinned by
/// the standard), and the mappings from bits to doubles are spelled out here
/// instead of going through the library distributions, whose algorithms are
/// implementation-defined. A given seed therefore always yields the same
/// draw sequence from this class.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Raw 64 random bits.
  std::uint64_t bits() { return gen_(); }

  /// Uniform double in [0, 1): the top 53 bits scaled by 2^-53.
  double uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal draw via the Box-Muller transform.
  ///
  /// Consumes exactly two uniforms per call; the sine twin is discarded so
  /// the stream position never depends on cached state.
  double normal() {
    // u1 in (0, 1] keeps the log finite.
    double u1 = static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) {
    return mean + stddev * normal();
  }

  /// Uniform index in [0, n). Uses a plain modulo reduction; the bias is
  /// below 2^-50 for any n that fits in memory.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(bits() % n);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tsenc
