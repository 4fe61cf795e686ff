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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/rng.hpp"

using namespace tsenc;

TEST_CASE("segment_signal splits an exact multiple", "[core]") {
  std::vector<double> x(48);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i) * 0.5;

  const auto res = segment_signal(x, 4);
  REQUIRE(res.segments.size() == 12);
  REQUIRE(res.padded_length == 48);
  for (const auto& seg : res.segments) REQUIRE(seg.values.size() == 4);
  REQUIRE(res.segments[3].values == std::vector<double>{6.0, 6.5, 7.0, 7.5});

  REQUIRE(concat_segments(res.segments, x.size()) == x);
}

TEST_CASE("segment_signal handles length one", "[core]") {
  const auto res = segment_signal(std::vector<double>{5.0}, 1);
  REQUIRE(res.segments.size() == 1);
  REQUIRE(res.segments[0].values == std::vector<double>{5.0});
}

TEST_CASE("segment_signal zero-pads the final segment when asked", "[core]") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto res = segment_signal(x, 4, Padding::Zero);
  REQUIRE(res.segments.size() == 3);
  REQUIRE(res.padded_length == 12);
  REQUIRE(res.segments[2].values == std::vector<double>{9.0, 10.0, 0.0, 0.0});

  REQUIRE(concat_segments(res.segments, x.size()) == x);
}

TEST_CASE("segment_signal rejects a non-multiple by default", "[core]") {
  std::vector<double> x{1, 2, 3, 4, 5};
  REQUIRE_THROWS_AS(segment_signal(x, 4), ShapeError);
  REQUIRE_THROWS_AS(segment_signal(x, 4, Padding::Reject), ShapeError);
}

TEST_CASE("segment_signal input validation", "[core]") {
  std::vector<double> x{1, 2, 3, 4};
  REQUIRE_THROWS_AS(segment_signal(x, 0), ShapeError);
  REQUIRE_THROWS_AS(segment_signal(x, -2), ShapeError);
  REQUIRE_THROWS_AS(segment_signal(std::vector<double>{}, 4), ShapeError);

  std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN(), 3, 4};
  REQUIRE_THROWS_AS(segment_signal(bad, 4), ValidationError);
  std::vector<double> inf{1.0, std::numeric_limits<double>::infinity(), 3, 4};
  REQUIRE_THROWS_AS(segment_signal(inf, 2), ValidationError);
}

TEST_CASE("concat_segments truncates to the original length", "[core]") {
  std::vector<Segment> segs{{{1, 2}}, {{3, 4}}};
  REQUIRE(concat_segments(segs, 4) == std::vector<double>{1, 2, 3, 4});

  std::vector<Segment> padded{{{1, 2}}, {{3, 0}}};
  REQUIRE(concat_segments(padded, 3) == std::vector<double>{1, 2, 3});
}

TEST_CASE("concat_segments rejects impossible requests", "[core]") {
  REQUIRE_THROWS_AS(concat_segments({}, 0), ShapeError);
  std::vector<Segment> segs{{{1, 2}}, {{3, 4}}};
  REQUIRE_THROWS_AS(concat_segments(segs, 5), ShapeError);
  std::vector<Segment> ragged{{{1, 2}}, {{3}}};
  REQUIRE_THROWS_AS(concat_segments(ragged, 3), ShapeError);
}

TEST_CASE("segment then concat round-trips random signals", "[core]") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t t = 1 + rng.index(97);
    const int n = 1 + static_cast<int>(rng.index(9));
    std::vector<double> x(t);
    for (auto& v : x) v = rng.uniform(-5.0, 5.0);
    const auto res = segment_signal(x, n, Padding::Zero);
    REQUIRE(res.padded_length % static_cast<std::size_t>(n) == 0);
    REQUIRE(res.padded_length >= t);
    REQUIRE(concat_segments(res.segments, t) == x);
  }
}

TEST_CASE("normalize_minmax maps each feature onto [0, 1]", "[core]") {
  TimeSeries ts;
  ts.feature_names = {"hr"};
  ts.values = Mat::from_rows({{0.0, 5.0, 10.0}});
  const auto res = normalize_minmax(ts);
  REQUIRE(res.series.values(0, 0) == 0.0);
  REQUIRE(res.series.values(0, 1) == 0.5);
  REQUIRE(res.series.values(0, 2) == 1.0);
  REQUIRE(res.stats.min == std::vector<double>{0.0});
  REQUIRE(res.stats.max == std::vector<double>{10.0});
  REQUIRE(res.clamped == 0);
}

TEST_CASE("normalize_minmax maps a constant feature to zero", "[core]") {
  TimeSeries ts;
  ts.feature_names = {"flat"};
  ts.values = Mat::from_rows({{7.0, 7.0, 7.0}});
  const auto res = normalize_minmax(ts);
  for (std::size_t j = 0; j < 3; ++j) REQUIRE(res.series.values(0, j) == 0.0);
}

TEST_CASE("normalize_minmax clamps under supplied stats", "[core]") {
  TimeSeries ts;
  ts.feature_names = {"x"};
  ts.values = Mat::from_rows({{12.0, 5.0, -1.0}});
  MinMaxStats stats{{0.0}, {10.0}};
  const auto res = normalize_minmax(ts, stats);
  REQUIRE(res.series.values(0, 0) == 1.0);
  REQUIRE(res.series.values(0, 1) == 0.5);
  REQUIRE(res.series.values(0, 2) == 0.0);
  REQUIRE(res.clamped == 2);
}

TEST_CASE("normalize_minmax rejects mismatched stats", "[core]") {
  TimeSeries ts;
  ts.feature_names = {"a", "b"};
  ts.values = Mat::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  MinMaxStats stats{{0.0}, {1.0}};
  REQUIRE_THROWS_AS(normalize_minmax(ts, stats), ShapeError);
}

TEST_CASE("normalize_minmax is idempotent", "[core]") {
  Rng rng(5);
  TimeSeries ts;
  ts.feature_names = {"a", "b", "c"};
  ts.values = Mat(3, 20);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 20; ++j) ts.values(i, j) = rng.uniform(-10.0, 10.0);
  }
  const auto once = normalize_minmax(ts);
  const auto twice = normalize_minmax(once.series);
  REQUIRE(twice.series.values == once.series.values);
}

TEST_CASE("TimeSeries validation", "[core]") {
  TimeSeries ok;
  ok.feature_names = {"a"};
  ok.values = Mat::from_rows({{1.0, 2.0}});
  REQUIRE_NOTHROW(ok.validate());

  TimeSeries wrong_names = ok;
  wrong_names.feature_names = {"a", "b"};
  REQUIRE_THROWS_AS(wrong_names.validate(), ValidationError);

  TimeSeries nan_value = ok;
  nan_value.values(0, 1) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_AS(nan_value.validate(), ValidationError);

  TimeSeries empty;
  REQUIRE_THROWS_AS(empty.validate(), ValidationError);

  TimeSeries bad_step = ok;
  bad_step.time_step_hours = 0.0;
  REQUIRE_THROWS_AS(bad_step.validate(), ValidationError);
}

TEST_CASE("Mat basics", "[core]") {
  REQUIRE_THROWS_AS(Mat::from_rows({{1.0}, {1.0, 2.0}}), ShapeError);
  Mat m(2, 3, 1.5);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  REQUIRE(m(1, 2) == 1.5);
  m(0, 0) = -1.0;
  REQUIRE(m.row(0)[0] == -1.0);
  REQUIRE(m.all_finite());
  m(1, 1) = std::numeric_limits<double>::infinity();
  REQUIRE_FALSE(m.all_finite());
}

TEST_CASE("Dataset validation catches shape and label mismatches", "[core]") {
  TimeSeries a;
  a.feature_names = {"f0"};
  a.values = Mat::from_rows({{1.0, 2.0}});

  Dataset ds;
  ds.examples.emplace_back("e1", a);
  ds.examples.emplace_back("e2", a);
  ds.labels["e1"] = {1, {}};
  ds.labels["e2"] = {0, {}};
  REQUIRE_NOTHROW(ds.validate());

  SECTION("shape mismatch") {
    ds.examples[1].second.values = Mat::from_rows({{1.0, 2.0, 3.0}});
    REQUIRE_THROWS_AS(ds.validate(), ValidationError);
  }
  SECTION("feature name mismatch") {
    ds.examples[1].second.feature_names = {"g0"};
    REQUIRE_THROWS_AS(ds.validate(), ValidationError);
  }
  SECTION("label for unknown example") {
    ds.labels["ghost"] = {0, {}};
    REQUIRE_THROWS_AS(ds.validate(), ValidationError);
  }
  SECTION("missing declared attribute") {
    ds.attribute_names = {"grp"};
    REQUIRE_THROWS_AS(ds.validate(), ValidationError);
  }
  SECTION("empty dataset") {
    Dataset none;
    REQUIRE_THROWS_AS(none.validate(), ValidationError);
  }
}

TEST_CASE("hash_split is deterministic and roughly 70/15/15", "[core]") {
  REQUIRE(hash_split("patient_0001") == hash_split("patient_0001"));

  std::map<Split, int> counts;
  const int total = 20000;
  for (int i = 0; i < total; ++i) {
    counts[hash_split("example_" + std::to_string(i))]++;
  }
  const double train = counts[Split::Train] / static_cast<double>(total);
  const double val = counts[Split::Validation] / static_cast<double>(total);
  const double held = counts[Split::HeldOut] / static_cast<double>(total);
  REQUIRE_THAT(train, Catch::Matchers::WithinAbs(0.70, 0.02));
  REQUIRE_THAT(val, Catch::Matchers::WithinAbs(0.15, 0.02));
  REQUIRE_THAT(held, Catch::Matchers::WithinAbs(0.15, 0.02));
}

TEST_CASE("hash_split ignores everything but the id", "[core]") {
  // Same ids in any container order land in the same branch.
  const Split s1 = hash_split("abc");
  const Split s2 = hash_split(std::string("ab") + "c");
  REQUIRE(s1 == s2);
}
