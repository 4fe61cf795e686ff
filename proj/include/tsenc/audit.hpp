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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "tsenc/core.hpp"
#include "tsenc/dataset_io.hpp"
#include "tsenc/error.hpp"
#include "tsenc/metrics.hpp"
#include "tsenc/mi.hpp"
#include "tsenc/nn.hpp"
#include "tsenc/rng.hpp"

namespace tsenc::audit {

struct AuditConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  int hidden_dim = 64;
  int epochs = 50;
  double learning_rate = 1e-3;
  int batch_size = 64;
  int probe_epochs = 50;
  double probe_learning_rate = 1e-3;
  int probe_batch_size = 256;
  int mi_k = 3;
  std::size_t mi_max_samples = 2000;  // rows used per MI estimate; evenly strided subsample above this
  int workers = 1;                    // concurrent seeds
};

inline double mean(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

/// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
inline double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

/// Per-variant audit results. Headline numbers are means over seeds; the
/// per-seed vectors are kept so directional comparisons do not lose
/// information to averaging.
struct VariantReport {
  std::string name;
  std::vector<double> task_auroc_per_seed;
  std::map<std::string, std::vector<double>> probe_auroc_per_seed;
  std::vector<double> mi_averaged_per_seed;
  std::vector<double> mi_vectorized_per_seed;
  std::map<std::string, double> odds_ratio;

  nlohmann::json to_json() const {
    nlohmann::json probe;
    nlohmann::json probe_seeds;
    for (const auto& [attr, values] : probe_auroc_per_seed) {
      probe[attr] = {{"mean", mean(values)}, {"std", sample_std(values)}};
      probe_seeds[attr] = values;
    }
    return nlohmann::json{
        {"probe_auroc", probe},
        {"probe_auroc_per_seed", probe_seeds},
        {"mi_averaged", mean(mi_averaged_per_seed)},
        {"mi_averaged_per_seed", mi_averaged_per_seed},
        {"mi_vectorized", mean(mi_vectorized_per_seed)},
        {"mi_vectorized_per_seed", mi_vectorized_per_seed},
        {"odds_ratio", odds_ratio},
        {"task_auroc", mean(task_auroc_per_seed)},
        {"task_auroc_per_seed", task_auroc_per_seed},
    };
  }
};

struct LeakageReport {
  std::vector<std::string> attributes;
  std::vector<std::uint64_t> seeds;
  int mi_k = 3;
  std::size_t mi_samples = 0;
  std::vector<VariantReport> variants;  // original first, then encoded inputs in order

  const VariantReport& variant(const std::string& name) const {
    for (const auto& v : variants) {
      if (v.name == name) return v;
    }
    throw ValidationError("no variant named " + name);
  }

  nlohmann::json to_json() const {
    nlohmann::json vs;
    for (const auto& v : variants) vs[v.name] = v.to_json();
    return nlohmann::json{
        {"attributes", attributes},
        {"seeds", seeds},
        {"mi_k", mi_k},
        {"mi_samples", mi_samples},
        {"variants", vs},
    };
  }
};

namespace detail {

struct SplitIndices {
  std::vector<std::size_t> train, validation, held_out;
};

inline SplitIndices split_dataset(const Dataset& ds) {
  SplitIndices out;
  for (std::size_t i = 0; i < ds.examples.size(); ++i) {
    switch (hash_split(ds.examples[i].first)) {
      case Split::Train: out.train.push_back(i); break;
      case Split::Validation: out.validation.push_back(i); break;
      case Split::HeldOut: out.held_out.push_back(i); break;
    }
  }
  return out;
}

inline const ExampleLabels& labels_for(const Dataset& ds, const std::string& id) {
  auto it = ds.labels.find(id);
  if (it == ds.labels.end()) {
    throw ValidationError("example " + id + " has no labels");
  }
  return it->second;
}

inline std::vector<int> task_labels(const Dataset& ds) {
  std::vector<int> y;
  y.reserve(ds.examples.size());
  for (const auto& ex : ds.examples) y.push_back(labels_for(ds, ex.first).task_label);
  return y;
}

inline Mat attribute_targets(const Dataset& ds, const std::vector<std::string>& attrs) {
  Mat out(ds.examples.size(), attrs.size());
  for (std::size_t i = 0; i < ds.examples.size(); ++i) {
    const auto& labels = labels_for(ds, ds.examples[i].first);
    for (std::size_t c = 0; c < attrs.size(); ++c) {
      auto it = labels.attributes.find(attrs[c]);
      if (it == labels.attributes.end()) {
        throw ValidationError("attribute " + attrs[c] + " missing for example " +
                              ds.examples[i].first);
      }
      out(i, c) = static_cast<double>(it->second);
    }
  }
  return out;
}

/// Evenly strided row subsample; identity when rows <= cap.
inline std::vector<std::size_t> mi_rows(std::size_t rows, std::size_t cap) {
  std::vector<std::size_t> idx;
  if (cap == 0 || rows <= cap) {
    idx.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) idx[i] = i;
    return idx;
  }
  idx.reserve(cap);
  for (std::size_t i = 0; i < cap; ++i) idx.push_back(i * rows / cap);
  return idx;
}

inline Mat take_rows(const Mat& m, const std::vector<std::size_t>& rows) {
  Mat out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* src = m.row(rows[i]);
    std::copy(src, src + m.cols(), out.row(i));
  }
  return out;
}

inline void require_aligned(const Dataset& a, const Dataset& b,
                            const std::string& name) {
  if (a.examples.size() != b.examples.size()) {
    throw ValidationError("variant " + name + ": example count differs");
  }
  for (std::size_t i = 0; i < a.examples.size(); ++i) {
    if (a.examples[i].first != b.examples[i].first) {
      throw ValidationError("variant " + name + ": example ids differ");
    }
  }
  if (a.labels.size() != b.labels.size()) {
    throw ValidationError("variant " + name + ": label count differs");
  }
  for (const auto& [id, la] : a.labels) {
    auto it = b.labels.find(id);
    if (it == b.labels.end() || la != it->second) {
      throw ValidationError("variant " + name + ": labels differ for " + id);
    }
  }
}

}  // namespace detail

/// Audits one dataset variant: trains the reference model per seed, probes the
/// frozen embeddings for every attribute, and estimates MI between the
/// embedding and both input reductions. Probe and task AUROC are computed on
/// the held-out split.
inline VariantReport audit_variant(const Dataset& ds,
                                   const std::vector<std::string>& attrs,
                                   const AuditConfig& cfg,
                                   const std::string& name) {
  ds.validate();
  if (attrs.empty()) throw ConfigError("no attributes to audit");
  if (cfg.seeds.empty()) throw ConfigError("no seeds to audit");

  std::vector<TimeSeries> batch;
  batch.reserve(ds.examples.size());
  for (const auto& ex : ds.examples) batch.push_back(ex.second);
  const Mat x = metrics::reduce_series(batch, metrics::ReduceMode::Vectorized);
  const Mat x_avg = metrics::reduce_series(batch, metrics::ReduceMode::Averaged);
  const std::vector<int> y = detail::task_labels(ds);
  const Mat targets = detail::attribute_targets(ds, attrs);
  const detail::SplitIndices split = detail::split_dataset(ds);
  if (split.held_out.empty()) throw ValidationError("held-out split is empty");

  std::vector<int> y_held;
  for (std::size_t i : split.held_out) y_held.push_back(y[i]);

  const std::vector<std::size_t> mi_idx =
      detail::mi_rows(ds.examples.size(), cfg.mi_max_samples);
  const Mat x_mi = detail::take_rows(x, mi_idx);
  const Mat x_avg_mi = detail::take_rows(x_avg, mi_idx);

  VariantReport report;
  report.name = name;
  report.task_auroc_per_seed.resize(cfg.seeds.size());
  report.mi_averaged_per_seed.resize(cfg.seeds.size());
  report.mi_vectorized_per_seed.resize(cfg.seeds.size());
  for (const auto& attr : attrs) {
    report.probe_auroc_per_seed[attr].resize(cfg.seeds.size());
  }

  auto run_seed = [&](std::size_t s) {
    Rng master(cfg.seeds[s]);
    const std::uint64_t model_seed = master.bits();
    const std::uint64_t model_shuffle = master.bits();
    const std::uint64_t probe_seed = master.bits();
    const std::uint64_t probe_shuffle = master.bits();

    nn::ReferenceModel model(x.cols(), static_cast<std::size_t>(cfg.hidden_dim),
                             model_seed);
    model.train(x, y, split.train, split.validation,
                {cfg.epochs, cfg.learning_rate, cfg.batch_size, model_shuffle});

    const std::vector<double> task_scores = model.scores(x);
    std::vector<double> held_scores;
    for (std::size_t i : split.held_out) held_scores.push_back(task_scores[i]);
    report.task_auroc_per_seed[s] = metrics::auroc(held_scores, y_held);

    const Mat emb = model.embeddings(x);
    nn::LinearProbe probe(emb.cols(), attrs.size(), probe_seed);
    probe.train(emb, targets, split.train, split.validation,
                {cfg.probe_epochs, cfg.probe_learning_rate, cfg.probe_batch_size,
                 probe_shuffle});
    const Mat probe_scores = probe.scores(emb);
    for (std::size_t c = 0; c < attrs.size(); ++c) {
      std::vector<double> scores;
      std::vector<int> labels;
      for (std::size_t i : split.held_out) {
        scores.push_back(probe_scores(i, c));
        labels.push_back(static_cast<int>(targets(i, c)));
      }
      report.probe_auroc_per_seed[attrs[c]][s] = metrics::auroc(scores, labels);
    }

    const Mat emb_mi = detail::take_rows(emb, mi_idx);
    report.mi_averaged_per_seed[s] =
        mi::estimate_mi(emb_mi, x_avg_mi, cfg.mi_k).value;
    report.mi_vectorized_per_seed[s] =
        mi::estimate_mi(emb_mi, x_mi, cfg.mi_k).value;
  };

  const int workers =
      std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.seeds.size())));
  if (workers == 1) {
    for (std::size_t s = 0; s < cfg.seeds.size(); ++s) run_seed(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::string> failures(cfg.seeds.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t s = next.fetch_add(1);
          if (s >= cfg.seeds.size()) return;
          try {
            run_seed(s);
          } catch (const std::exception& e) {
            failures[s] = e.what();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures) {
      if (!f.empty()) throw TrainingError(f);
    }
  }

  for (std::size_t c = 0; c < attrs.size(); ++c) {
    std::vector<int> attr_labels;
    attr_labels.reserve(ds.examples.size());
    for (std::size_t i = 0; i < ds.examples.size(); ++i) {
      attr_labels.push_back(static_cast<int>(targets(i, c)));
    }
    report.odds_ratio[attrs[c]] = metrics::odds_ratio(attr_labels, y);
  }
  return report;
}

/// Full audit across the original dataset and any number of encoded variants.
/// All variants must carry identical example ids and labels. Encoded variants
/// are named by their directory basename.
inline LeakageReport audit_leakage(const std::string& original_dir,
                                   const std::vector<std::string>& encoded_dirs,
                                   const std::vector<std::string>& attrs,
                                   const AuditConfig& cfg) {
  struct NamedDataset {
    std::string name;
    Dataset ds;
  };
  std::vector<NamedDataset> variants;
  variants.push_back({"original", io::load_dataset(original_dir)});
  for (const auto& dir : encoded_dirs) {
    std::string base = std::filesystem::path(dir).filename().string();
    if (base.empty()) base = std::filesystem::path(dir).parent_path().filename().string();
    std::string name = base;
    int suffix = 2;
    for (const auto& v : variants) {
      if (v.name == name) name = base + "." + std::to_string(suffix++);
    }
    variants.push_back({name, io::load_dataset(dir)});
  }
  for (std::size_t i = 1; i < variants.size(); ++i) {
    detail::require_aligned(variants[0].ds, variants[i].ds, variants[i].name);
  }

  LeakageReport report;
  report.attributes = attrs;
  report.seeds = cfg.seeds;
  report.mi_k = cfg.mi_k;
  report.mi_samples =
      detail::mi_rows(variants[0].ds.examples.size(), cfg.mi_max_samples).size();
  for (const auto& v : variants) {
    report.variants.push_back(audit_variant(v.ds, attrs, cfg, v.name));
  }
  return report;
}

}  // namespace tsenc::audit
