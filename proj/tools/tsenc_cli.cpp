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

// Command line front end. Exit codes: 0 success, 1 runtime failure, 2 usage
// error. Human-readable logs go to stderr; machine-readable artifacts go to
// files or stdout. All randomness enters through --seed flags.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "tsenc/tsenc.hpp"

namespace {

using namespace tsenc;

struct KeygenArgs {
  std::string method;
  int segment_len = 0;
  std::uint64_t seed = 0;
  int layers = 2;
  std::string cnot = "ring";
  bool no_normalize = false;
  std::string out;
  CLI::Option* layers_opt = nullptr;
  CLI::Option* cnot_opt = nullptr;
};

int run_keygen(const KeygenArgs& args) {
  const bool quantum = args.method == "quantum";
  if (!quantum && (args.layers_opt->count() > 0 || args.cnot_opt->count() > 0)) {
    throw ConfigError("--layers and --cnot apply only to --method quantum");
  }
  pipeline::CircuitParams params;
  params.layers = args.layers;
  params.topology = args.cnot == "ring" ? pipeline::CnotTopology::Ring
                                        : pipeline::CnotTopology::Chain;
  const EncodingKey key = pipeline::generate_key(
      quantum ? Method::Quantum : Method::RandomProjection, args.segment_len,
      args.seed, params, !args.no_normalize);
  save_key(key, args.out);
  std::cout << key_fingerprint(key) << '\n';
  std::cerr << "wrote " << method_name(key.method) << " key to " << args.out
            << '\n';
  return 0;
}

struct EncodeArgs {
  std::string key_path;
  std::string in_dir;
  std::string out_dir;
  bool pad_zero = false;
  int workers = 1;
};

int run_encode(const EncodeArgs& args) {
  const EncodingKey key = load_key(args.key_path);
  pipeline::DatasetEncodeOptions options;
  options.padding = args.pad_zero ? Padding::Zero : Padding::Reject;
  options.workers = args.workers;
  const io::Manifest manifest =
      pipeline::encode_dataset(args.in_dir, key, args.out_dir, options);
  std::cerr << "encoded " << manifest.examples << " examples ("
            << manifest.features << " features x " << manifest.time_steps
            << " steps) into " << args.out_dir << "; clamped "
            << manifest.clamped << " values\n";
  return 0;
}

struct AuditArgs {
  std::string original;
  std::vector<std::string> encoded;
  std::vector<std::string> attrs;
  std::vector<std::uint64_t> seeds;
  std::string out;
  int workers = 1;
};

int run_audit(const AuditArgs& args) {
  audit::AuditConfig cfg;
  cfg.seeds = args.seeds;
  cfg.workers = args.workers;
  const audit::LeakageReport report =
      audit::audit_leakage(args.original, args.encoded, args.attrs, cfg);
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw IoError("cannot open '" + args.out + "' for writing");
  out << report.to_json().dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + args.out + "'");
  std::cerr << "audited " << report.variants.size() << " variants over "
            << report.seeds.size() << " seeds; wrote " << args.out << '\n';
  return 0;
}

struct InspectArgs {
  std::string in_dir;
  std::string feature;
  bool summary = false;
  CLI::Option* feature_opt = nullptr;
};

int run_inspect(const InspectArgs& args) {
  const Dataset ds = io::load_dataset(args.in_dir);
  const TimeSeries& first = ds.examples.front().second;

  std::vector<std::size_t> selected;
  if (args.feature_opt->count() > 0) {
    const auto& names = first.feature_names;
    const auto it = std::find(names.begin(), names.end(), args.feature);
    if (it == names.end()) {
      throw ValidationError("no feature named '" + args.feature + "'");
    }
    selected.push_back(static_cast<std::size_t>(it - names.begin()));
  } else {
    for (std::size_t f = 0; f < first.features(); ++f) selected.push_back(f);
  }

  if (args.summary) {
    // Averaged summary series: the mean over examples at each (feature, step).
    const std::size_t steps = first.steps();
    for (std::size_t i = 0; i < selected.size(); ++i) {
      std::cout << (i ? "," : "") << first.feature_names[selected[i]];
    }
    std::cout << '\n';
    const double scale = 1.0 / static_cast<double>(ds.examples.size());
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t i = 0; i < selected.size(); ++i) {
        double acc = 0.0;
        for (const auto& [id, series] : ds.examples) {
          acc += series.values(selected[i], t);
        }
        std::cout << (i ? "," : "") << io::format_double(acc * scale);
      }
      std::cout << '\n';
    }
    return 0;
  }

  std::cout << "feature,min,max,mean,std\n";
  for (std::size_t f : selected) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [id, series] : ds.examples) {
      for (std::size_t t = 0; t < series.steps(); ++t) {
        const double v = series.values(f, t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (const auto& [id, series] : ds.examples) {
      for (std::size_t t = 0; t < series.steps(); ++t) {
        const double d = series.values(f, t) - mean;
        ss += d * d;
      }
    }
    const double stddev = std::sqrt(ss / static_cast<double>(count));
    std::cout << first.feature_names[f] << ',' << io::format_double(lo) << ','
              << io::format_double(hi) << ',' << io::format_double(mean) << ','
              << io::format_double(stddev) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreversible time series encoding and leakage auditing"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate an encoding key");
  keygen->add_option("--method", kg.method, "Encoding method")
      ->required()
      ->check(CLI::IsMember({"quantum", "random-projection"}));
  keygen->add_option("--segment-len", kg.segment_len, "Segment length n")
      ->required()
      ->check(CLI::PositiveNumber);
  keygen->add_option("--seed", kg.seed, "Key generation seed")->required();
  kg.layers_opt =
      keygen->add_option("--layers", kg.layers, "Circuit layers (quantum only)")
          ->check(CLI::NonNegativeNumber);
  kg.cnot_opt = keygen->add_option("--cnot", kg.cnot, "CNOT topology (quantum only)")
                    ->check(CLI::IsMember({"ring", "chain"}));
  keygen->add_flag("--no-normalize", kg.no_normalize,
                   "Skip min-max normalization before encoding");
  keygen->add_option("--out", kg.out, "Key file to write")->required();

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a dataset directory");
  encode->add_option("--key", enc.key_path, "Key file")->required();
  encode->add_option("--in", enc.in_dir, "Input dataset directory")->required();
  encode->add_option("--out", enc.out_dir, "Output dataset directory")->required();
  encode->add_flag("--pad-zero", enc.pad_zero,
                   "Zero-pad series whose length is not a multiple of n");
  encode->add_option("--workers", enc.workers, "Concurrent encoding workers")
      ->check(CLI::PositiveNumber);

  AuditArgs aud;
  auto* audit_cmd = app.add_subcommand("audit", "Audit latent information leakage");
  audit_cmd->add_option("--original", aud.original, "Original dataset directory")
      ->required();
  audit_cmd->add_option("--encoded", aud.encoded, "Encoded dataset directories")
      ->required();
  audit_cmd->add_option("--attrs", aud.attrs, "Attribute columns to probe")
      ->required()
      ->delimiter(',');
  audit_cmd->add_option("--seeds", aud.seeds, "Training seeds")
      ->required()
      ->delimiter(',');
  audit_cmd->add_option("--out", aud.out, "Report JSON to write")->required();
  audit_cmd->add_option("--workers", aud.workers, "Concurrent audit seeds")
      ->check(CLI::PositiveNumber);

  InspectArgs ins;
  auto* inspect = app.add_subcommand("inspect", "Summarize a dataset directory");
  inspect->add_option("--in", ins.in_dir, "Dataset directory")->required();
  ins.feature_opt =
      inspect->add_option("--feature", ins.feature, "Restrict to one feature");
  inspect->add_flag("--summary", ins.summary,
                    "Emit the example-averaged series as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(keygen)) return run_keygen(kg);
    if (app.got_subcommand(encode)) return run_encode(enc);
    if (app.got_subcommand(audit_cmd)) return run_audit(aud);
    return run_inspect(ins);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
