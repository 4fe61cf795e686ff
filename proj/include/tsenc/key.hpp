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

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"
#include "tsenc/qsim.hpp"
#include "tsenc/sha256.hpp"

namespace tsenc {

enum class Method { RandomProjection, Quantum };

inline std::string method_name(Method m) {
  return m == Method::Quantum ? "quantum" : "random_projection";
}

inline Method method_from_name(const std::string& name) {
  if (name == "quantum") return Method::Quantum;
  if (name == "random_projection") return Method::RandomProjection;
  throw ConfigError("unknown encoding method '" + name + "'");
}

/// Fully materialized description of one encoding transform. Holds the
/// actual matrix entries or circuit angles, so encoding never needs the
/// seed that produced them.
struct EncodingKey {
  int version = 1;
  Method method = Method::RandomProjection;
  int segment_len = 0;
  bool normalize = true;
  std::optional<Mat> projection;           // present iff random_projection
  std::optional<qsim::CircuitSpec> circuit;  // present iff quantum
  std::optional<std::int64_t> provenance_seed;

  void validate() const {
    if (version != 1) throw ConfigError("unsupported key version");
    if (segment_len < 1) throw ValidationError("segment length must be >= 1");
    if (projection.has_value() == circuit.has_value()) {
      throw ValidationError("key must hold exactly one of projection or circuit");
    }
    if (method == Method::RandomProjection) {
      if (!projection) throw ValidationError("random_projection key lacks a matrix");
      const auto n = static_cast<std::size_t>(segment_len);
      if (projection->rows() != n || projection->cols() != n) {
        throw ShapeError("projection matrix must be segment_len x segment_len");
      }
      if (!projection->all_finite()) {
        throw ValidationError("projection matrix has non-finite entries");
      }
    } else {
      if (!circuit) throw ValidationError("quantum key lacks a circuit");
      circuit->validate();
      if (circuit->wires != segment_len) {
        throw ShapeError("circuit wire count must equal segment length");
      }
    }
  }
};

namespace detail {

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a non-empty matrix");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) rows.push_back(row.get<std::vector<double>>());
  return Mat::from_rows(rows);
}

}  // namespace detail

inline nlohmann::json circuit_to_json(const qsim::CircuitSpec& spec) {
  nlohmann::json pattern = nlohmann::json::array();
  for (const auto& layer : spec.cnot_pattern) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [c, t] : layer) pairs.push_back({c, t});
    pattern.push_back(std::move(pairs));
  }
  return {{"wires", spec.wires},
          {"layers", spec.layers},
          {"rx_angles", detail::mat_to_json(spec.rx_angles)},
          {"cnot_pattern", std::move(pattern)}};
}

inline qsim::CircuitSpec circuit_from_json(const nlohmann::json& j) {
  qsim::CircuitSpec spec;
  spec.wires = j.at("wires").get<int>();
  spec.layers = j.at("layers").get<int>();
  const auto& angles = j.at("rx_angles");
  spec.rx_angles = angles.empty()
                       ? Mat(0, static_cast<std::size_t>(spec.wires))
                       : detail::mat_from_json(angles);
  for (const auto& layer : j.at("cnot_pattern")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : layer) {
      if (!p.is_array() || p.size() != 2) {
        throw ValidationError("cnot pair must be a [control, target] array");
      }
      pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    spec.cnot_pattern.push_back(std::move(pairs));
  }
  spec.validate();
  return spec;
}

inline nlohmann::json key_to_json(const EncodingKey& key) {
  key.validate();
  nlohmann::json j;
  j["version"] = key.version;
  j["method"] = method_name(key.method);
  j["segment_len"] = key.segment_len;
  j["normalize"] = key.normalize;
  j["projection"] =
      key.projection ? detail::mat_to_json(*key.projection) : nlohmann::json();
  j["circuit"] = key.circuit ? circuit_to_json(*key.circuit) : nlohmann::json();
  j["provenance_seed"] =
      key.provenance_seed ? nlohmann::json(*key.provenance_seed) : nlohmann::json();
  return j;
}

inline EncodingKey key_from_json(const nlohmann::json& j) {
  EncodingKey key;
  key.version = j.at("version").get<int>();
  key.method = method_from_name(j.at("method").get<std::string>());
  key.segment_len = j.at("segment_len").get<int>();
  key.normalize = j.at("normalize").get<bool>();
  if (!j.at("projection").is_null()) {
    key.projection = detail::mat_from_json(j.at("projection"));
  }
  if (!j.at("circuit").is_null()) {
    key.circuit = circuit_from_json(j.at("circuit"));
  }
  if (!j.at("provenance_seed").is_null()) {
    key.provenance_seed = j.at("provenance_seed").get<std::int64_t>();
  }
  key.validate();
  return key;
}

/// Canonical form hashed by the fingerprint: the compact dump of the key
/// object, with members in lexicographic order (nlohmann's default) and
/// numbers in shortest round-trip notation.
inline std::string canonical_key_json(const EncodingKey& key) {
  return key_to_json(key).dump();
}

/// SHA-256 hex digest of the canonical key JSON. Lets an audit verify which
/// key produced a dataset without shipping the key itself.
inline std::string key_fingerprint(const EncodingKey& key) {
  return Sha256::hex(canonical_key_json(key));
}

inline void save_key(const EncodingKey& key, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << key_to_json(key).dump(2) << '\n';
  if (!out) throw IoError("failed writing key to '" + path + "'");
}

inline EncodingKey load_key(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open key file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("ill-formed key file '" + path + "': " + e.what());
  }
  try {
    return key_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("ill-formed key file '" + path + "': " + e.what());
  }
}

}  // namespace tsenc
