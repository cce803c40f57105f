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

#ifndef TFMSEP_PIPELINE_HPP_
#define TFMSEP_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tfmsep/audio.hpp"
#include "tfmsep/bsseval.hpp"
#include "tfmsep/fastica.hpp"
#include "tfmsep/neuralnet.hpp"
#include "tfmsep/spectral.hpp"

namespace tfmsep {

// Where one of the two sources comes from: a builtin synthesizer or a WAV
// file on disk. Synthesized sources draw their seeds from the run seed.
struct SourceSpec {
  enum class Kind { kImpulseTrain, kBandNoise, kWavFile };

  Kind kind = Kind::kImpulseTrain;

  // kImpulseTrain
  double pulse_rate_hz = 10.0;
  double decay_per_sample = 0.995;

  // kBandNoise
  double low_hz = 500.0;
  double high_hz = 3000.0;

  // kWavFile
  std::string path;
  std::optional<int> channel;
};

enum class SeparationMethod { kOracleBinary, kOracleSoft, kDnn, kFastIca };

// Returns the lowercase command-line name of a method, and back.
// parse_method raises ParamError on an unknown name.
std::string method_name(SeparationMethod method);
SeparationMethod parse_method(const std::string& name);

// One experiment, fully determined: every random draw fans out from seed
// (seed+1 weight init, seed+2 shuffle, seed+3 and seed+4 the two
// synthesized sources), so equal configs give byte-identical outputs.
// Field defaults reproduce the reference experiment (44.1 kHz, 60 s,
// unit hop); desk_scale() is the same experiment shrunk to run in
// seconds, and what the CLI starts from.
struct RunConfig {
  RunConfig() { source_b.kind = SourceSpec::Kind::kBandNoise; }

  std::uint64_t seed = 1234;
  SeparationMethod method = SeparationMethod::kOracleSoft;
  std::string out_dir = "out";

  int sample_rate_hz = 44100;
  double duration_s = 60.0;
  double train_fraction = 0.9;
  std::array<double, 2> mix_weights{1.0, 1.0};

  StftParams stft_params{128, 1, 128};
  ChunkSpec chunk_spec{65, 20, 10};
  TrainConfig train_config{3, 64, true, 0};

  SourceSpec source_a{};  // impulse train by default
  SourceSpec source_b{};  // band noise; see the constructor

  IcaContrast ica_contrast = IcaContrast::kNegentropy;
  double ica_tol = 1e-6;
  int ica_max_iter = 200;

  // 2x2 instantaneous mixing used by the fastica method; row i gives the
  // weights of (source_a, source_b) in observed channel i.
  std::array<std::array<double, 2>, 2> ica_mixing{{{1.0, 1.0}, {0.6, 1.4}}};

  std::string model_path;  // empty: <out_dir>/model.tfmsep
  bool dump_spectrograms = false;

  static RunConfig make_default();

  // make_default() at 16 kHz, 10 s, hop 64: minutes of audio shrink to
  // seconds while every algorithm runs unchanged.
  static RunConfig desk_scale();

  std::string resolved_model_path() const;

  // Raises ParamError (with the offending field path in the message) on
  // the first invalid field. Runs before any command touches the disk.
  void validate() const;
};

// Parses a JSON config file into overrides on top of base. Unknown keys,
// wrong types, and malformed JSON raise ParamError naming the key.
RunConfig load_config(const std::string& path, const RunConfig& base);

// The fixed small-scale experiment the tests and acceptance checks run:
// desk_scale() with the given seed.
RunConfig benchmark_config(std::uint64_t seed = 1234);

// The two sources of a run, synthesized (seeds fanned out from
// config.seed) or loaded, power-normalized. Source a first.
std::pair<AudioSignal, AudioSignal> make_sources(const RunConfig& config);

// Synthesizes (or loads) both sources per the config and writes them,
// power-normalized, to <out_dir>/source_a.wav and source_b.wav.
void cmd_synth(const RunConfig& config);

// Builds the mixture, trains the mask estimator on the training split,
// and writes the model file plus history.csv (epoch, train and validation
// MSE) to out_dir.
void cmd_train(const RunConfig& config);

// Separates the mixture with the configured method and scores the
// estimates against the true sources. Writes mixture.wav, source WAVs,
// estimate_0.wav, estimate_1.wav, metrics.csv, and metrics.json to
// out_dir; with dump_spectrograms also CSV dumps of the mixture
// spectrogram magnitude and the masks.
void cmd_separate(const RunConfig& config);

// Scores externally produced estimates against references, writing
// metrics.csv and metrics.json to out_dir and a table to stdout. label
// fills the method column of the report.
void cmd_evaluate(const RunConfig& config,
                  const std::vector<std::string>& estimate_paths,
                  const std::vector<std::string>& reference_paths,
                  const std::string& label = "external");

// Formats a metric for reports: fixed six decimals, infinities as
// "inf" / "-inf".
std::string format_metric(double value);

}  // namespace tfmsep

#endif  // TFMSEP_PIPELINE_HPP_
