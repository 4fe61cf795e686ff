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
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"

namespace tsenc::qsim {

/// Largest supported register; caps the state vector at 4096 amplitudes.
inline constexpr int kMaxWires = 12;

/// Pure state of a w-wire register as 2^w complex amplitudes.
///
/// Basis ordering: the binary expansion of index i gives the wire values
/// with wire 0 as the MOST significant bit. For w = 2, index 2 = 0b10 is
/// the state with wire 0 excited and wire 1 resting.
struct QuantumState {
  int wires = 0;
  std::vector<std::complex<double>> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }
};

/// Gate list applied after input encoding: per layer, an RX on every wire
/// with a fixed angle, followed by that layer's CNOT pairs in listed order.
struct CircuitSpec {
  int wires = 0;
  int layers = 0;
  Mat rx_angles;  // layers x wires, radians
  std::vector<std::vector<std::pair<int, int>>> cnot_pattern;  // per layer

  void validate() const {
    if (wires < 1 || wires > kMaxWires) {
      throw ShapeError("circuit wire count " + std::to_string(wires) +
                       " outside [1, " + std::to_string(kMaxWires) + "]");
    }
    if (layers < 0) throw ValidationError("layer count must be >= 0");
    const auto l = static_cast<std::size_t>(layers);
    const auto w = static_cast<std::size_t>(wires);
    if (rx_angles.rows() != l || (l > 0 && rx_angles.cols() != w)) {
      throw ShapeError("rx_angles must be layers x wires");
    }
    if (!rx_angles.all_finite()) {
      throw ValidationError("rx_angles contains non-finite values");
    }
    if (cnot_pattern.size() != l) {
      throw ShapeError("cnot_pattern must list one entry per layer");
    }
    for (const auto& layer : cnot_pattern) {
      for (const auto& [c, t] : layer) {
        if (c < 0 || c >= wires || t < 0 || t >= wires) {
          throw ShapeError("cnot wire index out of range");
        }
        if (c == t) throw ShapeError("cnot control equals target");
      }
    }
  }
};

/// All wires in the resting state |0...0>.
inline QuantumState init_state(int wires) {
  if (wires < 1 || wires > kMaxWires) {
    throw ShapeError("register size " + std::to_string(wires) +
                     " outside [1, " + std::to_string(kMaxWires) + "]");
  }
  QuantumState s;
  s.wires = wires;
  s.amplitudes.assign(std::size_t{1} << wires, {0.0, 0.0});
  s.amplitudes[0] = {1.0, 0.0};
  return s;
}

namespace detail {

inline void check_wire(const QuantumState& s, int wire) {
  if (wire < 0 || wire >= s.wires) {
    throw ShapeError("wire index " + std::to_string(wire) +
                     " out of range for " + std::to_string(s.wires) + " wires");
  }
}

// Applies a 2x2 unitary on one wire by striding over amplitude pairs that
// differ only in that wire's bit.
inline void apply_single(QuantumState& s, int wire, std::complex<double> u00,
                         std::complex<double> u01, std::complex<double> u10,
                         std::complex<double> u11) {
  check_wire(s, wire);
  const int bit = s.wires - 1 - wire;  // wire 0 = most significant
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t dim = s.dim();
  auto* amp = s.amplitudes.data();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const auto a0 = amp[i0];
      const auto a1 = amp[i1];
      amp[i0] = u00 * a0 + u01 * a1;
      amp[i1] = u10 * a0 + u11 * a1;
    }
  }
}

}  // namespace detail

/// Rotation about the x axis:
///   [ cos(phi/2)    -i sin(phi/2) ]
///   [ -i sin(phi/2)  cos(phi/2)   ]
inline QuantumState apply_rx(QuantumState state, int wire, double phi) {
  const double c = std::cos(phi / 2.0);
  const double s = std::sin(phi / 2.0);
  detail::apply_single(state, wire, {c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
  return state;
}

/// Rotation about the y axis (real-valued):
///   [ cos(phi/2)  -sin(phi/2) ]
///   [ sin(phi/2)   cos(phi/2) ]
inline QuantumState apply_ry(QuantumState state, int wire, double phi) {
  const double c = std::cos(phi / 2.0);
  const double s = std::sin(phi / 2.0);
  detail::apply_single(state, wire, {c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
  return state;
}

/// Flips the target wire on every basis state whose control wire is excited.
inline QuantumState apply_cnot(QuantumState state, int control, int target) {
  detail::check_wire(state, control);
  detail::check_wire(state, target);
  if (control == target) throw ShapeError("cnot control equals target");
  const std::size_t cbit = std::size_t{1} << (state.wires - 1 - control);
  const std::size_t tbit = std::size_t{1} << (state.wires - 1 - target);
  auto* amp = state.amplitudes.data();
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amp[i], amp[i | tbit]);
    }
  }
  return state;
}

/// Pauli-Z expectation on one wire: P(resting) - P(excited), in [-1, 1].
inline double expect_z(const QuantumState& state, int wire) {
  detail::check_wire(state, wire);
  const std::size_t bit = std::size_t{1} << (state.wires - 1 - wire);
  double p0 = 0.0, p1 = 0.0;
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = std::norm(state.amplitudes[i]);
    if (i & bit) {
      p1 += p;
    } else {
      p0 += p;
    }
  }
  const double z = p0 - p1;
  return std::clamp(z, -1.0, 1.0);
}

/// Full encode-process-measure pass for one segment.
///
/// Starting from the resting register, wire k is rotated by RY(pi * input[k]),
/// then each layer applies its RX gates on every wire followed by its CNOT
/// pairs in listed order. The result is the Z expectation of every wire.
/// Inputs must lie in [0, 1] so the encoding angles span [0, pi].
inline std::vector<double> run_circuit(const CircuitSpec& spec,
                                       std::span<const double> input) {
  spec.validate();
  if (input.size() != static_cast<std::size_t>(spec.wires)) {
    throw ShapeError("input length " + std::to_string(input.size()) +
                     " does not match wire count " + std::to_string(spec.wires));
  }
  for (double v : input) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ValidationError("circuit input outside [0, 1]");
    }
  }

  QuantumState state = init_state(spec.wires);
  for (int k = 0; k < spec.wires; ++k) {
    state = apply_ry(std::move(state), k, std::numbers::pi * input[k]);
  }
  for (int l = 0; l < spec.layers; ++l) {
    for (int k = 0; k < spec.wires; ++k) {
      state = apply_rx(std::move(state), k, spec.rx_angles(l, k));
    }
    for (const auto& [c, t] : spec.cnot_pattern[l]) {
      state = apply_cnot(std::move(state), c, t);
    }
  }

  std::vector<double> out(static_cast<std::size_t>(spec.wires));
  for (int k = 0; k < spec.wires; ++k) {
    out[static_cast<std::size_t>(k)] = expect_z(state, k);
  }
  return out;
}

}  // namespace tsenc::qsim
