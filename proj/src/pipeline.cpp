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

#include "tfmsep/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tfmsep/errors.hpp"
#include "tfmsep/masking.hpp"

namespace tfmsep {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// -------------------------------------------------------------------------
// Config parsing

void reject_unknown_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> known,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end()) {
      throw ParamError("config: unknown key '" +
                       (path.empty() ? key : path + "." + key) + "'");
    }
  }
}

template <typename T>
T get_as(const nlohmann::json& obj, const std::string& path) {
  try {
    return obj.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParamError("config: wrong type for '" + path + "'");
  }
}

template <typename T>
void maybe(const nlohmann::json& obj, const char* key,
           const std::string& path, T& target) {
  if (obj.contains(key)) {
    target = get_as<T>(obj.at(key), path.empty() ? key : path + "." + key);
  }
}

SourceSpec parse_source(const nlohmann::json& obj, const std::string& path,
                        const SourceSpec& base) {
  if (!obj.is_object()) {
    throw ParamError("config: '" + path + "' must be an object");
  }
  reject_unknown_keys(obj,
                      {"kind", "pulse_rate_hz", "decay_per_sample", "low_hz",
                       "high_hz", "path", "channel"},
                      path);
  SourceSpec spec = base;
  if (obj.contains("kind")) {
    const auto kind = get_as<std::string>(obj.at("kind"), path + ".kind");
    if (kind == "impulse_train") {
      spec.kind = SourceSpec::Kind::kImpulseTrain;
    } else if (kind == "band_noise") {
      spec.kind = SourceSpec::Kind::kBandNoise;
    } else if (kind == "wav") {
      spec.kind = SourceSpec::Kind::kWavFile;
    } else {
      throw ParamError("config: '" + path + ".kind' must be one of "
                       "impulse_train, band_noise, wav (got '" + kind + "')");
    }
  }
  maybe(obj, "pulse_rate_hz", path, spec.pulse_rate_hz);
  maybe(obj, "decay_per_sample", path, spec.decay_per_sample);
  maybe(obj, "low_hz", path, spec.low_hz);
  maybe(obj, "high_hz", path, spec.high_hz);
  maybe(obj, "path", path, spec.path);
  if (obj.contains("channel")) {
    spec.channel = get_as<int>(obj.at("channel"), path + ".channel");
  }
  return spec;
}

void validate_source(const SourceSpec& spec, int sample_rate_hz,
                     const std::string& path) {
  switch (spec.kind) {
    case SourceSpec::Kind::kImpulseTrain:
      if (!(spec.pulse_rate_hz > 0.0) ||
          spec.pulse_rate_hz >= sample_rate_hz / 2.0) {
        throw ParamError("config: '" + path +
                         ".pulse_rate_hz' must be positive and below half "
                         "the sample rate");
      }
      if (!(spec.decay_per_sample > 0.0 && spec.decay_per_sample < 1.0)) {
        throw ParamError("config: '" + path +
                         ".decay_per_sample' must lie strictly in (0, 1)");
      }
      break;
    case SourceSpec::Kind::kBandNoise:
      if (!(spec.low_hz >= 0.0) || !(spec.low_hz < spec.high_hz) ||
          !(spec.high_hz <= sample_rate_hz / 2.0)) {
        throw ParamError("config: '" + path +
                         "' band must satisfy 0 <= low_hz < high_hz <= "
                         "sample_rate_hz / 2");
      }
      break;
    case SourceSpec::Kind::kWavFile:
      if (spec.path.empty()) {
        throw ParamError("config: '" + path +
                         ".path' is required for a wav source");
      }
      break;
  }
}

// -------------------------------------------------------------------------
// Shared pipeline pieces

AudioSignal make_source(const SourceSpec& spec, const RunConfig& config,
                        std::uint64_t seed) {
  switch (spec.kind) {
    case SourceSpec::Kind::kImpulseTrain:
      return synth_impulse_train(spec.pulse_rate_hz, spec.decay_per_sample,
                                 config.duration_s, config.sample_rate_hz,
                                 seed);
    case SourceSpec::Kind::kBandNoise:
      return synth_band_noise(spec.low_hz, spec.high_hz, config.duration_s,
                              config.sample_rate_hz, seed);
    case SourceSpec::Kind::kWavFile: {
      AudioSignal s = read_wav(spec.path, spec.channel);
      if (s.sample_rate_hz != config.sample_rate_hz) {
        throw DataError("source '" + spec.path + "' is sampled at " +
                        std::to_string(s.sample_rate_hz) +
                        " Hz but the run expects " +
                        std::to_string(config.sample_rate_hz) +
                        " Hz; resampling is not supported");
      }
      return s;
    }
  }
  throw ParamError("config: unknown source kind");
}

}  // namespace

// Seeds fan out from the run seed so the two synthesizers never share a
// stream.
std::pair<AudioSignal, AudioSignal> make_sources(const RunConfig& config) {
  AudioSignal a =
      normalize_power(make_source(config.source_a, config, config.seed + 3));
  AudioSignal b =
      normalize_power(make_source(config.source_b, config, config.seed + 4));
  return {std::move(a), std::move(b)};
}

namespace {

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw DataError("cannot create output directory '" + config.out_dir +
                    "': " + ec.message());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_matrix_csv(const std::string& path, const RealMatrix& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  char buf[64];
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << buf;
      if (c + 1 < m.cols()) out << ',';
    }
    out << '\n';
  }
  if (!out) {
    throw DataError("write failed for '" + path + "'");
  }
}

ordered_json metric_json(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  return value;
}

// Renders the report files and the stdout table for one evaluation.
void write_report(const RunConfig& config, const std::string& label,
                  const BssEvalResult& result,
                  const ordered_json& extra = {}) {
  std::ostringstream csv;
  csv << "method,source,sdr_db,sir_db,sar_db,permutation\n";
  for (std::size_t i = 0; i < result.per_source.size(); ++i) {
    const SourceMetrics& sm = result.per_source[i];
    csv << label << ',' << i << ',' << format_metric(sm.sdr_db) << ','
        << format_metric(sm.sir_db) << ',' << format_metric(sm.sar_db) << ','
        << result.assignment[i] << '\n';
  }
  {
    const std::string path = join_path(config.out_dir, "metrics.csv");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << csv.str();
    if (!out) throw DataError("write failed for '" + path + "'");
  }

  ordered_json doc;
  doc["method"] = label;
  doc["seed"] = config.seed;
  doc["assignment"] = result.assignment;
  doc["sources"] = ordered_json::array();
  for (std::size_t i = 0; i < result.per_source.size(); ++i) {
    const SourceMetrics& sm = result.per_source[i];
    ordered_json row;
    row["source"] = i;
    row["reference"] = result.assignment[i];
    row["sdr_db"] = metric_json(sm.sdr_db);
    row["sir_db"] = metric_json(sm.sir_db);
    row["sar_db"] = metric_json(sm.sar_db);
    doc["sources"].push_back(row);
  }
  for (const auto& [key, value] : extra.items()) {
    doc[key] = value;
  }
  {
    const std::string path = join_path(config.out_dir, "metrics.json");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw DataError("write failed for '" + path + "'");
  }

  std::ostringstream table;
  table << "method       source reference sdr_db       sir_db       sar_db\n";
  for (std::size_t i = 0; i < result.per_source.size(); ++i) {
    const SourceMetrics& sm = result.per_source[i];
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %-6zu %-9zu %-12s %-12s %-12s\n",
                  label.c_str(), i, result.assignment[i],
                  format_metric(sm.sdr_db).c_str(),
                  format_metric(sm.sir_db).c_str(),
                  format_metric(sm.sar_db).c_str());
    table << line;
  }
  std::cout << table.str();
}

}  // namespace

std::string method_name(SeparationMethod method) {
  switch (method) {
    case SeparationMethod::kOracleBinary:
      return "oracle-binary";
    case SeparationMethod::kOracleSoft:
      return "oracle-soft";
    case SeparationMethod::kDnn:
      return "dnn";
    case SeparationMethod::kFastIca:
      return "fastica";
  }
  throw ParamError("unknown separation method");
}

SeparationMethod parse_method(const std::string& name) {
  if (name == "oracle-binary") return SeparationMethod::kOracleBinary;
  if (name == "oracle-soft") return SeparationMethod::kOracleSoft;
  if (name == "dnn") return SeparationMethod::kDnn;
  if (name == "fastica") return SeparationMethod::kFastIca;
  throw ParamError("unknown method '" + name +
                   "'; expected oracle-binary, oracle-soft, dnn, or fastica");
}

RunConfig RunConfig::make_default() { return RunConfig{}; }

RunConfig RunConfig::desk_scale() {
  RunConfig config;
  config.sample_rate_hz = 16000;
  config.duration_s = 10.0;
  config.stft_params.hop = 64;
  return config;
}

std::string RunConfig::resolved_model_path() const {
  if (!model_path.empty()) return model_path;
  return join_path(out_dir, "model.tfmsep");
}

void RunConfig::validate() const {
  if (out_dir.empty()) {
    throw ParamError("config: 'out_dir' must not be empty");
  }
  if (sample_rate_hz <= 0) {
    throw ParamError("config: 'sample_rate_hz' must be positive");
  }
  if (!(duration_s > 0.0)) {
    throw ParamError("config: 'duration_s' must be positive");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParamError("config: 'train_fraction' must lie strictly in (0, 1)");
  }
  if (!std::isfinite(mix_weights[0]) || !std::isfinite(mix_weights[1])) {
    throw ParamError("config: 'mix_weights' must be finite");
  }
  try {
    stft_params.validate();
  } catch (const ParamError& e) {
    throw ParamError(std::string("config: 'stft': ") + e.what());
  }
  try {
    chunk_spec.validate();
  } catch (const ParamError& e) {
    throw ParamError(std::string("config: 'chunk': ") + e.what());
  }
  if (chunk_spec.bins != stft_params.bins()) {
    throw ParamError("config: 'chunk.bins' (" + std::to_string(chunk_spec.bins) +
                     ") must equal the stft bin count (" +
                     std::to_string(stft_params.bins()) + ")");
  }
  if (train_config.epochs < 1) {
    throw ParamError("config: 'train.epochs' must be at least 1");
  }
  if (train_config.batch_size < 1) {
    throw ParamError("config: 'train.batch_size' must be at least 1");
  }
  validate_source(source_a, sample_rate_hz, "source_a");
  validate_source(source_b, sample_rate_hz, "source_b");
  if (!(ica_tol > 0.0)) {
    throw ParamError("config: 'ica.tol' must be positive");
  }
  if (ica_max_iter < 1) {
    throw ParamError("config: 'ica.max_iter' must be at least 1");
  }
  for (const auto& row : ica_mixing) {
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw ParamError("config: 'ica.mixing' must be finite");
      }
    }
  }
  const double det = ica_mixing[0][0] * ica_mixing[1][1] -
                     ica_mixing[0][1] * ica_mixing[1][0];
  if (std::abs(det) < 1e-12) {
    throw ParamError("config: 'ica.mixing' is singular");
  }
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) {
    throw ParamError("config: cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParamError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw ParamError("config: '" + path + "' must hold a JSON object");
  }
  reject_unknown_keys(doc,
                      {"seed", "method", "out_dir", "sample_rate_hz",
                       "duration_s", "train_fraction", "mix_weights", "stft",
                       "chunk", "train", "source_a", "source_b", "ica",
                       "model_path", "dump_spectrograms"},
                      "");

  RunConfig config = base;
  maybe(doc, "seed", "", config.seed);
  if (doc.contains("method")) {
    config.method =
        parse_method(get_as<std::string>(doc.at("method"), "method"));
  }
  maybe(doc, "out_dir", "", config.out_dir);
  maybe(doc, "sample_rate_hz", "", config.sample_rate_hz);
  maybe(doc, "duration_s", "", config.duration_s);
  maybe(doc, "train_fraction", "", config.train_fraction);
  if (doc.contains("mix_weights")) {
    const auto w =
        get_as<std::vector<double>>(doc.at("mix_weights"), "mix_weights");
    if (w.size() != 2) {
      throw ParamError("config: 'mix_weights' must hold exactly 2 values");
    }
    config.mix_weights = {w[0], w[1]};
  }
  if (doc.contains("stft")) {
    const auto& s = doc.at("stft");
    if (!s.is_object()) throw ParamError("config: 'stft' must be an object");
    reject_unknown_keys(s, {"window_len", "hop", "fft_len"}, "stft");
    maybe(s, "window_len", "stft", config.stft_params.window_len);
    maybe(s, "hop", "stft", config.stft_params.hop);
    maybe(s, "fft_len", "stft", config.stft_params.fft_len);
  }
  if (doc.contains("chunk")) {
    const auto& c = doc.at("chunk");
    if (!c.is_object()) throw ParamError("config: 'chunk' must be an object");
    reject_unknown_keys(c, {"bins", "width_frames", "overlap_frames"},
                        "chunk");
    maybe(c, "bins", "chunk", config.chunk_spec.bins);
    maybe(c, "width_frames", "chunk", config.chunk_spec.width_frames);
    maybe(c, "overlap_frames", "chunk", config.chunk_spec.overlap_frames);
  }
  if (doc.contains("train")) {
    const auto& t = doc.at("train");
    if (!t.is_object()) throw ParamError("config: 'train' must be an object");
    reject_unknown_keys(t, {"epochs", "batch_size", "shuffle"}, "train");
    maybe(t, "epochs", "train", config.train_config.epochs);
    maybe(t, "batch_size", "train", config.train_config.batch_size);
    maybe(t, "shuffle", "train", config.train_config.shuffle);
  }
  if (doc.contains("source_a")) {
    config.source_a =
        parse_source(doc.at("source_a"), "source_a", config.source_a);
  }
  if (doc.contains("source_b")) {
    config.source_b =
        parse_source(doc.at("source_b"), "source_b", config.source_b);
  }
  if (doc.contains("ica")) {
    const auto& i = doc.at("ica");
    if (!i.is_object()) throw ParamError("config: 'ica' must be an object");
    reject_unknown_keys(i, {"contrast", "tol", "max_iter", "mixing"}, "ica");
    if (i.contains("contrast")) {
      const auto c = get_as<std::string>(i.at("contrast"), "ica.contrast");
      if (c == "kurtosis") {
        config.ica_contrast = IcaContrast::kKurtosis;
      } else if (c == "negentropy") {
        config.ica_contrast = IcaContrast::kNegentropy;
      } else {
        throw ParamError(
            "config: 'ica.contrast' must be kurtosis or negentropy");
      }
    }
    maybe(i, "tol", "ica", config.ica_tol);
    maybe(i, "max_iter", "ica", config.ica_max_iter);
    if (i.contains("mixing")) {
      const auto m = get_as<std::vector<std::vector<double>>>(i.at("mixing"),
                                                              "ica.mixing");
      if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
        throw ParamError("config: 'ica.mixing' must be a 2x2 matrix");
      }
      config.ica_mixing = {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}};
    }
  }
  maybe(doc, "model_path", "", config.model_path);
  maybe(doc, "dump_spectrograms", "", config.dump_spectrograms);
  return config;
}

RunConfig benchmark_config(std::uint64_t seed) {
  RunConfig config = RunConfig::desk_scale();
  config.seed = seed;
  return config;
}

void cmd_synth(const RunConfig& config) {
  config.validate();
  auto [a, b] = make_sources(config);
  ensure_out_dir(config);
  write_wav(join_path(config.out_dir, "source_a.wav"), a);
  write_wav(join_path(config.out_dir, "source_b.wav"), b);
}

void cmd_train(const RunConfig& config) {
  config.validate();
  auto [a, b] = make_sources(config);

  auto [a_train, a_val] = split_train_validation(a, config.train_fraction);
  auto [b_train, b_val] = split_train_validation(b, config.train_fraction);

  const AudioSignal mix_train = mix(a_train, b_train, config.mix_weights[0],
                                    config.mix_weights[1]);
  const AudioSignal mix_val =
      mix(a_val, b_val, config.mix_weights[0], config.mix_weights[1]);

  const RealMatrix mag_a_train = magnitude(stft(a_train, config.stft_params));
  const RealMatrix mag_b_train = magnitude(stft(b_train, config.stft_params));
  const RealMatrix mag_a_val = magnitude(stft(a_val, config.stft_params));
  const RealMatrix mag_b_val = magnitude(stft(b_val, config.stft_params));

  // Predictors: standardized log magnitude of the mixture. Validation
  // replays the training-set statistics; inference will, too.
  auto [feat_train, stats] =
      log_features(magnitude(stft(mix_train, config.stft_params)));
  const RealMatrix feat_val =
      log_features(magnitude(stft(mix_val, config.stft_params)), stats);

  // Targets: the oracle ratio mask of source a against source b.
  const RealMatrix target_train = soft_mask(mag_a_train, mag_b_train).data;
  const RealMatrix target_val = soft_mask(mag_a_val, mag_b_val).data;

  TrainConfig tc = config.train_config;
  tc.shuffle_seed = config.seed + 2;
  const TrainResult result = train(
      chunk(feat_train, config.chunk_spec), chunk(target_train, config.chunk_spec),
      chunk(feat_val, config.chunk_spec), chunk(target_val, config.chunk_spec),
      config.chunk_spec, stats, tc, config.seed + 1);

  ensure_out_dir(config);
  save_model(result.model, config.resolved_model_path());

  const std::string history_path = join_path(config.out_dir, "history.csv");
  std::ofstream out(history_path, std::ios::trunc);
  if (!out) {
    throw DataError("cannot open '" + history_path + "' for writing");
  }
  out << "epoch,train_mse,val_mse\n";
  char line[96];
  for (const EpochStats& es : result.history) {
    std::snprintf(line, sizeof(line), "%d,%.12e,%.12e\n", es.epoch,
                  es.train_mse, es.val_mse);
    out << line;
  }
  if (!out) {
    throw DataError("write failed for '" + history_path + "'");
  }
}

void cmd_separate(const RunConfig& config) {
  config.validate();
  const std::string label = method_name(config.method);

  // The dnn method needs its model before any heavy lifting; a missing
  // file is a usage problem (train first), not a data problem.
  MlpModel model;
  if (config.method == SeparationMethod::kDnn) {
    const std::string path = config.resolved_model_path();
    if (!fs::exists(path)) {
      throw ParamError("separate: no model at '" + path +
                       "'; run the train command first or set model_path");
    }
    model = load_model(path);
  }

  auto [a, b] = make_sources(config);
  const AudioSignal mixture =
      mix(a, b, config.mix_weights[0], config.mix_weights[1]);

  std::vector<AudioSignal> estimates;
  ordered_json extra;
  Mask mask_0, mask_1;
  bool have_masks = false;

  if (config.method == SeparationMethod::kFastIca) {
    // Masking needs only one channel; ICA needs as many observations as
    // sources. Build the documented two-channel instantaneous mixture.
    const Index n = static_cast<Index>(a.size());
    RealMatrix x(2, n);
    for (Index t = 0; t < n; ++t) {
      const double sa = a.samples[static_cast<std::size_t>(t)];
      const double sb = b.samples[static_cast<std::size_t>(t)];
      x(0, t) = config.ica_mixing[0][0] * sa + config.ica_mixing[0][1] * sb;
      x(1, t) = config.ica_mixing[1][0] * sa + config.ica_mixing[1][1] * sb;
    }
    auto [z, whitening] = center_whiten(x);
    const IcaModel ica = fastica_fit(z, whitening, config.ica_contrast,
                                     config.ica_tol, config.ica_max_iter,
                                     config.seed);
    const RealMatrix sources = ica_separate(x, ica);
    for (Index r = 0; r < sources.rows(); ++r) {
      AudioSignal est;
      est.sample_rate_hz = config.sample_rate_hz;
      est.samples.assign(sources.row(r).begin(), sources.row(r).end());
      estimates.push_back(std::move(est));
    }
    extra["ica"] = {{"contrast", config.ica_contrast == IcaContrast::kKurtosis
                                     ? "kurtosis"
                                     : "negentropy"},
                    {"converged", ica.converged},
                    {"iterations", ica.iterations_used}};
  } else {
    const Spectrogram mix_spec = stft(mixture, config.stft_params);
    if (config.method == SeparationMethod::kDnn) {
      const RealMatrix features =
          log_features(magnitude(mix_spec), model.feature_stats);
      mask_0 = estimate_mask(model, features);
    } else {
      const RealMatrix mag_a = magnitude(stft(a, config.stft_params));
      const RealMatrix mag_b = magnitude(stft(b, config.stft_params));
      mask_0 = config.method == SeparationMethod::kOracleBinary
                   ? binary_mask(mag_a, mag_b)
                   : soft_mask(mag_a, mag_b);
    }
    mask_1 = complement(mask_0);
    have_masks = true;
    estimates.push_back(reconstruct(mask_0, mix_spec));
    estimates.push_back(reconstruct(mask_1, mix_spec));
  }

  const std::vector<AudioSignal> references = {a, b};
  const BssEvalResult result = evaluate(estimates, references);

  ensure_out_dir(config);
  write_wav(join_path(config.out_dir, "source_a.wav"), a);
  write_wav(join_path(config.out_dir, "source_b.wav"), b);
  write_wav(join_path(config.out_dir, "mixture.wav"), mixture);
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    write_wav(join_path(config.out_dir,
                        "estimate_" + std::to_string(i) + ".wav"),
              estimates[i]);
  }
  if (config.dump_spectrograms) {
    write_matrix_csv(join_path(config.out_dir, "mixture_spectrogram.csv"),
                     magnitude(stft(mixture, config.stft_params)));
    if (have_masks) {
      write_matrix_csv(join_path(config.out_dir, "mask_0.csv"), mask_0.data);
      write_matrix_csv(join_path(config.out_dir, "mask_1.csv"), mask_1.data);
    }
  }
  write_report(config, label, result, extra);
}

void cmd_evaluate(const RunConfig& config,
                  const std::vector<std::string>& estimate_paths,
                  const std::vector<std::string>& reference_paths,
                  const std::string& label) {
  config.validate();
  if (estimate_paths.empty() || reference_paths.empty()) {
    throw ParamError("evaluate: need at least one estimate and one reference");
  }
  std::vector<AudioSignal> estimates, references;
  for (const std::string& p : estimate_paths) estimates.push_back(read_wav(p));
  for (const std::string& p : reference_paths) {
    references.push_back(read_wav(p));
  }
  const BssEvalResult result = evaluate(estimates, references);
  ensure_out_dir(config);
  write_report(config, label, result);
}

std::string format_metric(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace tfmsep
