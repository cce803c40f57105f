// Copyright 2026 The tfmsep Authors
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

#include "tfmsep/cli.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfmsep/errors.hpp"
#include "tfmsep/pipeline.hpp"

namespace tfmsep {

namespace {

// Common options shared by every subcommand. Values are collected first
// and layered afterwards: desk-scale defaults, then the config file, then
// explicit flags, then --paper-mode.
struct CommonFlags {
  std::string config_path;
  std::string method;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool paper_mode = false;
  bool has_seed = false;
  bool dump_spectrograms = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "JSON config file layered over the defaults");
    cmd->add_option("--seed", seed, "master random seed")
        ->each([this](const std::string&) { has_seed = true; });
    cmd->add_option("--method", method,
                    "oracle-binary | oracle-soft | dnn | fastica");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_flag("--paper-mode", paper_mode,
                  "full-scale run: 60 s at 44.1 kHz with hop 1 (slow)");
    cmd->add_flag("--dump-spectrograms", dump_spectrograms,
                  "also write spectrogram/mask CSV dumps");
  }

  RunConfig build() const {
    RunConfig config = RunConfig::desk_scale();
    if (!config_path.empty()) {
      config = load_config(config_path, config);
    }
    if (has_seed) config.seed = seed;
    if (!method.empty()) config.method = parse_method(method);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (dump_spectrograms) config.dump_spectrograms = true;
    if (paper_mode) {
      config.sample_rate_hz = 44100;
      config.duration_s = 60.0;
      config.stft_params = StftParams{128, 1, 128};
    }
    return config;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"separates two overlapped machine sounds from one mixture "
               "with time-frequency masks"};
  app.require_subcommand(1);

  CommonFlags synth_flags, train_flags, separate_flags, evaluate_flags;
  std::vector<std::string> estimate_paths, reference_paths;
  std::string evaluate_label = "external";

  CLI::App* synth =
      app.add_subcommand("synth", "write the two synthetic source WAVs");
  synth_flags.attach(synth);

  CLI::App* train =
      app.add_subcommand("train", "train the mask estimator on the mixture");
  train_flags.attach(train);

  CLI::App* separate = app.add_subcommand(
      "separate", "separate the mixture and score the estimates");
  separate_flags.attach(separate);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score externally produced estimates against references");
  evaluate_flags.attach(evaluate);
  evaluate->add_option("--estimate", estimate_paths, "estimate WAV (repeat)")
      ->required();
  evaluate->add_option("--reference", reference_paths,
                       "reference WAV (repeat)")
      ->required();
  evaluate->add_option("--label", evaluate_label,
                       "method column value in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help and version exit cleanly; anything else is a usage error.
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      cmd_synth(synth_flags.build());
    } else if (train->parsed()) {
      cmd_train(train_flags.build());
    } else if (separate->parsed()) {
      cmd_separate(separate_flags.build());
    } else if (evaluate->parsed()) {
      cmd_evaluate(evaluate_flags.build(), estimate_paths, reference_paths,
                   evaluate_label);
    }
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}

}  // namespace tfmsep
