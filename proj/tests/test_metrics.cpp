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
#include <vector>

#include "support/oracles.hpp"
#include "tsenc/metrics.hpp"
#include "tsenc/rng.hpp"

using namespace tsenc;
using Catch::Matchers::WithinAbs;

TEST_CASE("auroc on the worked example", "[metrics]") {
  std::vector<double> scores{0.1, 0.4, 0.35, 0.8};
  std::vector<int> labels{0, 0, 1, 1};
  REQUIRE(metrics::auroc(scores, labels) == 0.75);
}

TEST_CASE("auroc extremes", "[metrics]") {
  std::vector<double> ordered{0.1, 0.2, 0.8, 0.9};
  std::vector<int> labels{0, 0, 1, 1};
  REQUIRE(metrics::auroc(ordered, labels) == 1.0);

  std::vector<int> inverted{1, 1, 0, 0};
  REQUIRE(metrics::auroc(ordered, inverted) == 0.0);

  std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
  REQUIRE(metrics::auroc(flat, labels) == 0.5);
}

TEST_CASE("auroc rejects degenerate input", "[metrics]") {
  std::vector<double> scores{0.1, 0.2};
  REQUIRE_THROWS_AS(metrics::auroc(scores, std::vector<int>{1, 1}), MetricError);
  REQUIRE_THROWS_AS(metrics::auroc(scores, std::vector<int>{0, 0}), MetricError);
  REQUIRE_THROWS_AS(metrics::auroc({}, std::vector<int>{}), MetricError);
  REQUIRE_THROWS_AS(metrics::auroc(scores, std::vector<int>{0}), ShapeError);
  REQUIRE_THROWS_AS(metrics::auroc(scores, std::vector<int>{0, 2}), ValidationError);

  std::vector<double> bad{std::numeric_limits<double>::quiet_NaN(), 0.2};
  REQUIRE_THROWS_AS(metrics::auroc(bad, std::vector<int>{0, 1}), ValidationError);
}

TEST_CASE("auroc equals exhaustive pair counting, ties included", "[metrics][oracle]") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(49);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    // Quantized scores force plenty of exact ties.
    for (auto& s : scores) s = static_cast<double>(rng.index(8)) / 8.0;
    bool has0 = false, has1 = false;
    for (auto& l : labels) {
      l = rng.index(2) == 0 ? 0 : 1;
      (l == 1 ? has1 : has0) = true;
    }
    if (!has0) labels[0] = 0;
    if (!has1) labels[n - 1] = 1;

    REQUIRE(metrics::auroc(scores, labels) == oracle::auroc_pairs(scores, labels));
  }
}

TEST_CASE("auroc is invariant under strictly increasing transforms", "[metrics]") {
  Rng rng(11);
  std::vector<double> scores(40);
  std::vector<int> labels(40);
  for (auto& s : scores) s = rng.uniform(-3.0, 3.0);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3 == 0 ? 1 : 0;

  const double base = metrics::auroc(scores, labels);
  auto mono = scores;
  for (auto& s : mono) s = std::exp(2.0 * s) + 5.0;
  REQUIRE(metrics::auroc(mono, labels) == base);
}

TEST_CASE("auroc complement identity for tie-free scores", "[metrics]") {
  Rng rng(12);
  std::vector<double> scores(50);
  std::vector<int> labels(50);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = static_cast<double>(i) + rng.uniform(0.0, 0.5);
    labels[i] = rng.index(2) == 0 ? 0 : 1;
  }
  labels[0] = 0;
  labels[1] = 1;
  std::vector<int> flipped(labels);
  for (auto& l : flipped) l = 1 - l;
  REQUIRE_THAT(metrics::auroc(scores, labels) + metrics::auroc(scores, flipped),
               WithinAbs(1.0, 1e-12));
}

TEST_CASE("contingency table counts the four quadrants", "[metrics]") {
  std::vector<int> attr{1, 1, 1, 0, 0, 0, 1, 0};
  std::vector<int> outcome{1, 1, 0, 1, 0, 0, 0, 1};
  const auto t = metrics::contingency(attr, outcome);
  REQUIRE(t.a == 2);  // attr and outcome
  REQUIRE(t.b == 2);  // attr only
  REQUIRE(t.c == 2);  // outcome only
  REQUIRE(t.d == 2);  // neither
}

TEST_CASE("odds ratio on worked tables", "[metrics]") {
  REQUIRE(metrics::odds_ratio_table({10, 10, 10, 10}) == 1.0);
  REQUIRE(metrics::odds_ratio_table({20, 10, 5, 10}) == 4.0);

  // A zero cell triggers the +0.5 correction on every cell.
  const double corrected = metrics::odds_ratio_table({20, 10, 0, 10});
  REQUIRE(std::isfinite(corrected));
  REQUIRE(corrected > 0.0);
  REQUIRE_THAT(corrected, WithinAbs((20.5 * 10.5) / (10.5 * 0.5), 1e-12));
}

TEST_CASE("odds ratio is symmetric in its arguments", "[metrics]") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(30), b(30);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.index(2) == 0 ? 0 : 1;
      b[i] = rng.index(2) == 0 ? 0 : 1;
    }
    REQUIRE(metrics::odds_ratio(a, b) == metrics::odds_ratio(b, a));
  }
}

TEST_CASE("odds ratio input validation", "[metrics]") {
  REQUIRE_THROWS_AS(metrics::odds_ratio(std::vector<int>{}, std::vector<int>{}),
                    ValidationError);
  REQUIRE_THROWS_AS(
      metrics::odds_ratio(std::vector<int>{1}, std::vector<int>{1, 0}), ShapeError);
  REQUIRE_THROWS_AS(
      metrics::odds_ratio(std::vector<int>{2, 0}, std::vector<int>{1, 0}),
      ValidationError);
}

TEST_CASE("reduce_series averaged", "[metrics]") {
  TimeSeries constant;
  constant.feature_names = {"a", "b"};
  constant.values = Mat::from_rows({{3.5, 3.5, 3.5}, {3.5, 3.5, 3.5}});
  auto avg = metrics::reduce_series({constant}, metrics::ReduceMode::Averaged);
  REQUIRE(avg.rows() == 1);
  REQUIRE(avg.cols() == 2);
  REQUIRE(avg(0, 0) == 3.5);
  REQUIRE(avg(0, 1) == 3.5);

  TimeSeries two;
  two.feature_names = {"a", "b"};
  two.values = Mat::from_rows({{1.0, 3.0}, {2.0, 2.0}});
  avg = metrics::reduce_series({two}, metrics::ReduceMode::Averaged);
  REQUIRE(avg(0, 0) == 2.0);
  REQUIRE(avg(0, 1) == 2.0);
}

TEST_CASE("reduce_series vectorized flattens row-major", "[metrics]") {
  TimeSeries ts;
  ts.feature_names = {"a", "b"};
  ts.values = Mat::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const auto vec = metrics::reduce_series({ts}, metrics::ReduceMode::Vectorized);
  REQUIRE(vec.rows() == 1);
  REQUIRE(vec.cols() == 4);
  REQUIRE(vec.data() == std::vector<double>{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("reduce_series rejects ragged batches", "[metrics]") {
  TimeSeries a;
  a.feature_names = {"x"};
  a.values = Mat::from_rows({{1.0, 2.0}});
  TimeSeries b;
  b.feature_names = {"x"};
  b.values = Mat::from_rows({{1.0, 2.0, 3.0}});
  REQUIRE_THROWS_AS(metrics::reduce_series({a, b}, metrics::ReduceMode::Averaged),
                    ShapeError);
}
