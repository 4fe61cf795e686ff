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
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"

namespace tsenc::io {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& context) {
  double v{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw IoError(context + ": cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

/// One example on disk: a header row of feature names, then T rows of F
/// values (the stored grid is the transpose of the in-memory F x T matrix).
inline void write_series_csv(const std::string& path, const TimeSeries& series) {
  series.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t f = 0; f < series.features(); ++f) {
    if (f > 0) out << ',';
    out << series.feature_names[f];
  }
  out << '\n';
  for (std::size_t t = 0; t < series.steps(); ++t) {
    for (std::size_t f = 0; f < series.features(); ++f) {
      if (f > 0) out << ',';
      out << format_double(series.values(f, t));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
  TimeSeries series;
  series.feature_names = split_csv_line(line);
  const std::size_t f = series.feature_names.size();
  std::vector<std::vector<double>> rows;  // time-major, as stored
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != f) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(f));
    }
    std::vector<double> row(f);
    for (std::size_t i = 0; i < f; ++i) {
      row[i] = parse_double(fields[i], "'" + path + "' line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("'" + path + "' has no data rows");
  series.values = Mat(f, rows.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t i = 0; i < f; ++i) series.values(i, t) = rows[t][i];
  }
  series.validate();
  return series;
}

struct LabelTable {
  std::vector<std::string> attribute_names;
  std::map<std::string, ExampleLabels> labels;
};

inline int parse_binary(std::string_view text, const std::string& context) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw IoError(context + ": expected 0 or 1, got '" + std::string(text) + "'");
}

inline LabelTable read_labels_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open labels file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "example_id" || header[1] != "task_label") {
    throw IoError("'" + path + "' header must start with example_id,task_label");
  }
  LabelTable table;
  table.attribute_names.assign(header.begin() + 2, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) +
                    " has wrong field count");
    }
    const std::string ctx = "'" + path + "' line " + std::to_string(line_no);
    ExampleLabels lab;
    lab.task_label = parse_binary(fields[1], ctx);
    for (std::size_t i = 0; i < table.attribute_names.size(); ++i) {
      lab.attributes[table.attribute_names[i]] = parse_binary(fields[i + 2], ctx);
    }
    if (!table.labels.emplace(fields[0], std::move(lab)).second) {
      throw IoError(ctx + ": duplicate example_id '" + fields[0] + "'");
    }
  }
  return table;
}

inline void write_labels_csv(const std::string& path, const LabelTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "example_id,task_label";
  for (const auto& a : table.attribute_names) out << ',' << a;
  out << '\n';
  for (const auto& [id, lab] : table.labels) {
    out << id << ',' << lab.task_label;
    for (const auto& a : table.attribute_names) out << ',' << lab.attributes.at(a);
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

/// Loads a dataset directory: one <example_id>.csv per example plus
/// labels.csv. Examples are ordered by id so every pass over the dataset is
/// reproducible.
inline Dataset load_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a directory");
  Dataset ds;
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto path = entry.path();
    if (path.extension() != ".csv") continue;
    const std::string stem = path.stem().string();
    if (stem == "labels") continue;
    ids.push_back(stem);
  }
  if (ids.empty()) throw IoError("no example CSV files in '" + dir + "'");
  std::sort(ids.begin(), ids.end());
  ds.examples.reserve(ids.size());
  for (const auto& id : ids) {
    ds.examples.emplace_back(id, read_series_csv((fs::path(dir) / (id + ".csv")).string()));
  }
  const auto labels_path = fs::path(dir) / "labels.csv";
  if (fs::exists(labels_path)) {
    auto table = read_labels_csv(labels_path.string());
    ds.attribute_names = std::move(table.attribute_names);
    ds.labels = std::move(table.labels);
  }
  ds.validate();
  return ds;
}

/// Sidecar metadata written next to encoded examples.
struct Manifest {
  std::size_t examples = 0;
  std::size_t features = 0;
  std::size_t time_steps = 0;
  std::vector<std::string> feature_names;
  std::string method;
  int segment_len = 0;
  bool normalize = false;
  std::optional<MinMaxStats> stats;
  std::size_t clamped = 0;
  std::string key_fingerprint;
  std::optional<std::size_t> padded_time_steps;  // present only when padding ran
};

inline nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json j;
  j["examples"] = m.examples;
  j["features"] = m.features;
  j["time_steps"] = m.time_steps;
  j["feature_names"] = m.feature_names;
  j["method"] = m.method;
  j["segment_len"] = m.segment_len;
  j["normalize"] = m.normalize;
  if (m.stats) {
    j["stats"] = {{"min", m.stats->min}, {"max", m.stats->max}};
  } else {
    j["stats"] = nullptr;
  }
  j["clamped"] = m.clamped;
  j["key_fingerprint"] = m.key_fingerprint;
  if (m.padded_time_steps) j["padded_time_steps"] = *m.padded_time_steps;
  return j;
}

inline Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  m.examples = j.at("examples").get<std::size_t>();
  m.features = j.at("features").get<std::size_t>();
  m.time_steps = j.at("time_steps").get<std::size_t>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.method = j.at("method").get<std::string>();
  m.segment_len = j.at("segment_len").get<int>();
  m.normalize = j.at("normalize").get<bool>();
  if (!j.at("stats").is_null()) {
    MinMaxStats s;
    s.min = j.at("stats").at("min").get<std::vector<double>>();
    s.max = j.at("stats").at("max").get<std::vector<double>>();
    m.stats = std::move(s);
  }
  m.clamped = j.at("clamped").get<std::size_t>();
  m.key_fingerprint = j.at("key_fingerprint").get<std::string>();
  if (j.contains("padded_time_steps")) {
    m.padded_time_steps = j.at("padded_time_steps").get<std::size_t>();
  }
  return m;
}

inline void write_manifest(const std::string& path, const Manifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << manifest_to_json(m).dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    return manifest_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("ill-formed manifest '" + path + "': " + e.what());
  }
}

}  // namespace tsenc::io
