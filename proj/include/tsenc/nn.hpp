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
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tsenc/core.hpp"
#include "tsenc/error.hpp"
#include "tsenc/rng.hpp"

namespace tsenc::nn {

struct TrainConfig {
  int epochs = 50;
  double learning_rate = 1e-3;
  int batch_size = 64;
  std::uint64_t seed = 0;
};

struct TrainSummary {
  double best_val_loss = std::numeric_limits<double>::infinity();
  int best_epoch = 0;  // 0 = initial weights
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// Numerically stable binary cross-entropy on a logit.
inline double bce_with_logits(double z, double y) {
  return std::max(z, 0.0) - y * z + std::log1p(std::exp(-std::abs(z)));
}

namespace detail {

struct AdamTensor {
  std::vector<double> m, v;

  void init(std::size_t n) {
    m.assign(n, 0.0);
    v.assign(n, 0.0);
  }

  void step(std::vector<double>& w, const std::vector<double>& grad, long t,
            double lr) {
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t));
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
      v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      w[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + kEps);
    }
  }
};

inline void fisher_yates(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[rng.index(i)]);
  }
}

inline void require_both_classes(const std::vector<int>& y,
                                 const std::vector<std::size_t>& train_idx,
                                 const std::string& what) {
  bool has0 = false, has1 = false;
  for (std::size_t i : train_idx) {
    (y[i] == 1 ? has1 : has0) = true;
  }
  if (!has0 || !has1) {
    throw TrainingError(what + ": training split lacks one of the classes");
  }
}

}  // namespace detail

/// Reference task network: flatten -> dense(hidden) -> tanh -> dense(1) ->
/// sigmoid, trained with Adam on binary cross-entropy. The tanh layer is the
/// penultimate embedding. After training, the weights of the epoch with the
/// lowest validation loss are kept.
class ReferenceModel {
 public:
  ReferenceModel(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed)
      : in_(input_dim), hidden_(hidden_dim) {
    if (input_dim == 0 || hidden_dim == 0) {
      throw ShapeError("model dimensions must be positive");
    }
    Rng rng(seed);
    const double s1 = 1.0 / std::sqrt(static_cast<double>(in_));
    w1_.resize(hidden_ * in_);
    for (auto& w : w1_) w = rng.uniform(-s1, s1);
    b1_.assign(hidden_, 0.0);
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
    w2_.resize(hidden_);
    for (auto& w : w2_) w = rng.uniform(-s2, s2);
    b2_ = 0.0;
  }

  std::size_t input_dim() const { return in_; }
  std::size_t hidden_dim() const { return hidden_; }

  TrainSummary train(const Mat& x, const std::vector<int>& y,
                     const std::vector<std::size_t>& train_idx,
                     const std::vector<std::size_t>& val_idx,
                     const TrainConfig& cfg) {
    check_input(x);
    if (y.size() != x.rows()) throw ShapeError("label count does not match rows");
    if (train_idx.empty()) throw TrainingError("empty training split");
    detail::require_both_classes(y, train_idx, "task model");

    detail::AdamTensor aw1, ab1, aw2, ab2;
    aw1.init(w1_.size());
    ab1.init(b1_.size());
    aw2.init(w2_.size());
    ab2.init(1);

    std::vector<double> gw1(w1_.size()), gb1(b1_.size()), gw2(w2_.size()), gb2(1);
    std::vector<double> hidden(hidden_);
    std::vector<double> b2vec{b2_};

    TrainSummary summary;
    summary.best_val_loss = validation_loss(x, y, val_idx);
    auto best = snapshot();

    Rng shuffle_rng(cfg.seed);
    std::vector<std::size_t> order(train_idx);
    long t = 0;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
      detail::fisher_yates(order, shuffle_rng);
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(cfg.batch_size)) {
        const std::size_t stop =
            std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
        const double inv_batch = 1.0 / static_cast<double>(stop - start);
        std::fill(gw1.begin(), gw1.end(), 0.0);
        std::fill(gb1.begin(), gb1.end(), 0.0);
        std::fill(gw2.begin(), gw2.end(), 0.0);
        gb2[0] = 0.0;
        for (std::size_t p = start; p < stop; ++p) {
          const std::size_t row = order[p];
          const double* xi = x.row(row);
          const double z2 = forward(xi, hidden.data());
          const double dz2 = (sigmoid(z2) - static_cast<double>(y[row])) * inv_batch;
          for (std::size_t h = 0; h < hidden_; ++h) {
            gw2[h] += dz2 * hidden[h];
            const double dz1 = dz2 * w2_[h] * (1.0 - hidden[h] * hidden[h]);
            gb1[h] += dz1;
            double* gw1_row = gw1.data() + h * in_;
            for (std::size_t d = 0; d < in_; ++d) gw1_row[d] += dz1 * xi[d];
          }
          gb2[0] += dz2;
        }
        ++t;
        aw1.step(w1_, gw1, t, cfg.learning_rate);
        ab1.step(b1_, gb1, t, cfg.learning_rate);
        aw2.step(w2_, gw2, t, cfg.learning_rate);
        b2vec[0] = b2_;
        ab2.step(b2vec, gb2, t, cfg.learning_rate);
        b2_ = b2vec[0];
      }
      const double val_loss = validation_loss(x, y, val_idx);
      if (val_loss < summary.best_val_loss) {
        summary.best_val_loss = val_loss;
        summary.best_epoch = epoch;
        best = snapshot();
      }
    }
    restore(best);
    return summary;
  }

  /// Penultimate (tanh hidden) activations, one row per input row.
  Mat embeddings(const Mat& x) const {
    check_input(x);
    Mat out(x.rows(), hidden_);
    std::vector<double> hidden(hidden_);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      forward(x.row(i), hidden.data());
      std::copy(hidden.begin(), hidden.end(), out.row(i));
    }
    return out;
  }

  /// Sigmoid task scores, one per input row.
  std::vector<double> scores(const Mat& x) const {
    check_input(x);
    std::vector<double> out(x.rows());
    std::vector<double> hidden(hidden_);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      out[i] = sigmoid(forward(x.row(i), hidden.data()));
    }
    return out;
  }

 private:
  struct Snapshot {
    std::vector<double> w1, b1, w2;
    double b2;
  };

  Snapshot snapshot() const { return {w1_, b1_, w2_, b2_}; }

  void restore(const Snapshot& s) {
    w1_ = s.w1;
    b1_ = s.b1;
    w2_ = s.w2;
    b2_ = s.b2;
  }

  void check_input(const Mat& x) const {
    if (x.cols() != in_) {
      throw ShapeError("input width " + std::to_string(x.cols()) +
                       " does not match model input " + std::to_string(in_));
    }
  }

  // Fills hidden with tanh activations and returns the output logit.
  double forward(const double* xi, double* hidden) const {
    for (std::size_t h = 0; h < hidden_; ++h) {
      const double* w_row = w1_.data() + h * in_;
      double acc = b1_[h];
      for (std::size_t d = 0; d < in_; ++d) acc += w_row[d] * xi[d];
      hidden[h] = std::tanh(acc);
    }
    double z2 = b2_;
    for (std::size_t h = 0; h < hidden_; ++h) z2 += w2_[h] * hidden[h];
    return z2;
  }

  double validation_loss(const Mat& x, const std::vector<int>& y,
                         const std::vector<std::size_t>& val_idx) const {
    if (val_idx.empty()) return std::numeric_limits<double>::infinity();
    std::vector<double> hidden(hidden_);
    double loss = 0.0;
    for (std::size_t i : val_idx) {
      loss += bce_with_logits(forward(x.row(i), hidden.data()),
                              static_cast<double>(y[i]));
    }
    return loss / static_cast<double>(val_idx.size());
  }

  std::size_t in_;
  std::size_t hidden_;
  std::vector<double> w1_;  // hidden x in, row-major
  std::vector<double> b1_;
  std::vector<double> w2_;
  double b2_ = 0.0;
};

/// Single affine layer with independent sigmoid outputs, trained on frozen
/// embeddings. No feature transformation happens here: score c of row i is
/// sigmoid(w_c . emb_i + b_c).
class LinearProbe {
 public:
  LinearProbe(std::size_t input_dim, std::size_t outputs, std::uint64_t seed)
      : in_(input_dim), out_(outputs) {
    if (input_dim == 0 || outputs == 0) {
      throw ShapeError("probe dimensions must be positive");
    }
    Rng rng(seed);
    const double s = 1.0 / std::sqrt(static_cast<double>(in_));
    w_.resize(out_ * in_);
    for (auto& w : w_) w = rng.uniform(-s, s);
    b_.assign(out_, 0.0);
  }

  std::size_t outputs() const { return out_; }

  /// targets: one binary column per probe output.
  TrainSummary train(const Mat& emb, const Mat& targets,
                     const std::vector<std::size_t>& train_idx,
                     const std::vector<std::size_t>& val_idx,
                     const TrainConfig& cfg) {
    check_input(emb);
    if (targets.rows() != emb.rows() || targets.cols() != out_) {
      throw ShapeError("targets must be rows x outputs");
    }
    if (train_idx.empty()) throw TrainingError("empty training split");
    for (std::size_t c = 0; c < out_; ++c) {
      bool has0 = false, has1 = false;
      for (std::size_t i : train_idx) {
        (targets(i, c) == 1.0 ? has1 : has0) = true;
      }
      if (!has0 || !has1) {
        throw TrainingError("probe output " + std::to_string(c) +
                            ": training split lacks one of the classes");
      }
    }

    detail::AdamTensor aw, ab;
    aw.init(w_.size());
    ab.init(b_.size());
    std::vector<double> gw(w_.size()), gb(b_.size()), logits(out_);

    TrainSummary summary;
    summary.best_val_loss = validation_loss(emb, targets, val_idx);
    std::vector<double> best_w = w_, best_b = b_;

    Rng shuffle_rng(cfg.seed);
    std::vector<std::size_t> order(train_idx);
    const double inv_out = 1.0 / static_cast<double>(out_);
    long t = 0;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
      detail::fisher_yates(order, shuffle_rng);
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(cfg.batch_size)) {
        const std::size_t stop =
            std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
        const double scale = inv_out / static_cast<double>(stop - start);
        std::fill(gw.begin(), gw.end(), 0.0);
        std::fill(gb.begin(), gb.end(), 0.0);
        for (std::size_t p = start; p < stop; ++p) {
          const std::size_t row = order[p];
          const double* e = emb.row(row);
          forward(e, logits.data());
          for (std::size_t c = 0; c < out_; ++c) {
            const double dz = (sigmoid(logits[c]) - targets(row, c)) * scale;
            gb[c] += dz;
            double* gw_row = gw.data() + c * in_;
            for (std::size_t d = 0; d < in_; ++d) gw_row[d] += dz * e[d];
          }
        }
        ++t;
        aw.step(w_, gw, t, cfg.learning_rate);
        ab.step(b_, gb, t, cfg.learning_rate);
      }
      const double val_loss = validation_loss(emb, targets, val_idx);
      if (val_loss < summary.best_val_loss) {
        summary.best_val_loss = val_loss;
        summary.best_epoch = epoch;
        best_w = w_;
        best_b = b_;
      }
    }
    w_ = best_w;
    b_ = best_b;
    return summary;
  }

  /// Sigmoid scores, rows x outputs.
  Mat scores(const Mat& emb) const {
    check_input(emb);
    Mat out(emb.rows(), out_);
    std::vector<double> logits(out_);
    for (std::size_t i = 0; i < emb.rows(); ++i) {
      forward(emb.row(i), logits.data());
      for (std::size_t c = 0; c < out_; ++c) out(i, c) = sigmoid(logits[c]);
    }
    return out;
  }

 private:
  void check_input(const Mat& emb) const {
    if (emb.cols() != in_) {
      throw ShapeError("embedding width does not match probe input");
    }
  }

  void forward(const double* e, double* logits) const {
    for (std::size_t c = 0; c < out_; ++c) {
      const double* w_row = w_.data() + c * in_;
      double acc = b_[c];
      for (std::size_t d = 0; d < in_; ++d) acc += w_row[d] * e[d];
      logits[c] = acc;
    }
  }

  double validation_loss(const Mat& emb, const Mat& targets,
                         const std::vector<std::size_t>& val_idx) const {
    if (val_idx.empty()) return std::numeric_limits<double>::infinity();
    std::vector<double> logits(out_);
    double loss = 0.0;
    for (std::size_t i : val_idx) {
      forward(emb.row(i), logits.data());
      for (std::size_t c = 0; c < out_; ++c) {
        loss += bce_with_logits(logits[c], targets(i, c));
      }
    }
    return loss / (static_cast<double>(val_idx.size()) * static_cast<double>(out_));
  }

  std::size_t in_;
  std::size_t out_;
  std::vector<double> w_;  // out x in, row-major
  std::vector<double> b_;
};

}  // namespace tsenc::nn
