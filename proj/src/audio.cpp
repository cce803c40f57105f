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

#include "tfmsep/audio.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "tfmsep/errors.hpp"
#include "tfmsep/fft.hpp"

namespace tfmsep {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;

// WAV is little-endian; so is every platform this project targets.
// Fixed-width reads/writes go through memcpy to stay alignment-safe.
template <typename T>
T read_le(std::istream& in, const char* what) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) {
    throw DataError(std::string("wav: truncated file while reading ") + what);
  }
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

std::string read_tag(std::istream& in) {
  char tag[4];
  if (!in.read(tag, 4)) {
    throw DataError("wav: truncated file while reading a chunk tag");
  }
  return std::string(tag, 4);
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

AudioSignal read_wav(const std::string& path, std::optional<int> channel) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("wav: cannot open '" + path + "' for reading");
  }
  if (read_tag(in) != "RIFF") {
    throw DataError("wav: '" + path + "' is not a RIFF file");
  }
  read_le<std::uint32_t>(in, "RIFF size");
  if (read_tag(in) != "WAVE") {
    throw DataError("wav: '" + path + "' is not a WAVE file");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  std::vector<char> data;

  // Walk the chunk list; fmt and data are the ones we need, anything else
  // (fact, LIST, cue, ...) is skipped. Chunk bodies are word-aligned.
  while (in.peek() != EOF) {
    const std::string tag = read_tag(in);
    const auto size = read_le<std::uint32_t>(in, "chunk size");
    if (tag == "fmt ") {
      if (size < 16) {
        throw DataError("wav: fmt chunk too small in '" + path + "'");
      }
      fmt.format = read_le<std::uint16_t>(in, "format tag");
      fmt.channels = read_le<std::uint16_t>(in, "channel count");
      fmt.sample_rate = read_le<std::uint32_t>(in, "sample rate");
      read_le<std::uint32_t>(in, "byte rate");
      fmt.block_align = read_le<std::uint16_t>(in, "block align");
      fmt.bits_per_sample = read_le<std::uint16_t>(in, "bits per sample");
      in.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (tag == "data") {
      data.resize(size);
      if (!in.read(data.data(), size)) {
        throw DataError("wav: data chunk shorter than declared in '" + path +
                        "'");
      }
      if (size & 1) in.seekg(1, std::ios::cur);
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
      if (!in) {
        throw DataError("wav: truncated chunk '" + tag + "' in '" + path +
                        "'");
      }
    }
  }

  if (!have_fmt) {
    throw DataError("wav: missing fmt chunk in '" + path + "'");
  }
  if (data.empty()) {
    throw DataError("wav: missing or empty data chunk in '" + path + "'");
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0) {
    throw DataError("wav: malformed fmt chunk in '" + path + "'");
  }

  int bytes_per_sample = 0;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    bytes_per_sample = 4;
  } else {
    throw DataError("wav: unsupported encoding in '" + path +
                    "' (format tag " + std::to_string(fmt.format) + ", " +
                    std::to_string(fmt.bits_per_sample) +
                    " bits); only 16-bit PCM and 32-bit float are supported");
  }

  const int channels = fmt.channels;
  if (channels > 1 && !channel.has_value()) {
    throw DataError("wav: '" + path + "' has " + std::to_string(channels) +
                    " channels; pass a channel index to pick one");
  }
  const int pick = channel.value_or(0);
  if (pick < 0 || pick >= channels) {
    throw DataError("wav: channel " + std::to_string(pick) +
                    " out of range for " + std::to_string(channels) +
                    "-channel file '" + path + "'");
  }

  const std::size_t frame_bytes =
      static_cast<std::size_t>(bytes_per_sample) * channels;
  const std::size_t frames = data.size() / frame_bytes;
  if (frames == 0) {
    throw DataError("wav: no complete sample frames in '" + path + "'");
  }

  AudioSignal out;
  out.sample_rate_hz = static_cast<int>(fmt.sample_rate);
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const char* p = data.data() + f * frame_bytes +
                    static_cast<std::size_t>(pick) * bytes_per_sample;
    if (bytes_per_sample == 2) {
      std::int16_t v;
      std::memcpy(&v, p, 2);
      out.samples[f] = static_cast<double>(v) / 32768.0;
    } else {
      float v;
      std::memcpy(&v, p, 4);
      if (!std::isfinite(v)) {
        throw DataError("wav: non-finite sample in '" + path + "'");
      }
      out.samples[f] = static_cast<double>(v);
    }
  }
  return out;
}

void write_wav(const std::string& path, const AudioSignal& signal,
               WavEncoding encoding) {
  if (signal.samples.empty()) {
    throw DataError("wav: refusing to write an empty signal to '" + path +
                    "'");
  }
  if (signal.sample_rate_hz <= 0) {
    throw ParamError("wav: sample rate must be positive");
  }
  for (double s : signal.samples) {
    if (!std::isfinite(s)) {
      throw NumericError("wav: non-finite sample, nothing written to '" +
                         path + "'");
    }
  }

  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint32_t n = static_cast<std::uint32_t>(signal.samples.size());
  const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
  const std::uint32_t data_bytes = n * bytes_per_sample;
  // RIFF size counts everything after the size field itself:
  // "WAVE" + fmt chunk (+ fact chunk for float) + data chunk header + data.
  const std::uint32_t riff_size =
      4 + (8 + 16) + (pcm ? 0 : (8 + 4)) + 8 + data_bytes;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("wav: cannot open '" + path + "' for writing");
  }

  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, riff_size);
  out.write("WAVE", 4);

  out.write("fmt ", 4);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, pcm ? kFormatPcm : kFormatIeeeFloat);
  write_le<std::uint16_t>(out, 1);  // mono
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(signal.sample_rate_hz));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(signal.sample_rate_hz) *
                                   bytes_per_sample);
  write_le<std::uint16_t>(out, bytes_per_sample);
  write_le<std::uint16_t>(out, pcm ? 16 : 32);

  if (!pcm) {
    // Non-PCM formats carry a fact chunk with the frame count.
    out.write("fact", 4);
    write_le<std::uint32_t>(out, 4);
    write_le<std::uint32_t>(out, n);
  }

  out.write("data", 4);
  write_le<std::uint32_t>(out, data_bytes);

  std::size_t clipped = 0;
  if (pcm) {
    for (double s : signal.samples) {
      double scaled = s * 32768.0;
      if (scaled > 32767.0) {
        scaled = 32767.0;
        ++clipped;
      } else if (scaled < -32768.0) {
        scaled = -32768.0;
        ++clipped;
      }
      write_le<std::int16_t>(out, static_cast<std::int16_t>(std::lrint(scaled)));
    }
  } else {
    for (double s : signal.samples) {
      write_le<float>(out, static_cast<float>(s));
    }
  }

  if (!out) {
    throw DataError("wav: write failed for '" + path + "'");
  }
  out.close();
  if (!out) {
    throw DataError("wav: close failed for '" + path + "'");
  }
  if (clipped > 0) {
    std::cerr << "warning: wav: " << clipped << " sample(s) clipped writing '"
              << path << "'\n";
  }
}

double rms(const AudioSignal& signal) {
  if (signal.samples.empty()) {
    throw DataError("rms: empty signal");
  }
  double acc = 0.0;
  for (double s : signal.samples) acc += s * s;
  return std::sqrt(acc / static_cast<double>(signal.samples.size()));
}

AudioSignal normalize_power(const AudioSignal& signal) {
  const double r = rms(signal);
  if (r < std::numeric_limits<double>::min()) {
    throw DataError("normalize_power: signal has zero power");
  }
  AudioSignal out = signal;
  const double gain = 1.0 / r;
  for (double& s : out.samples) s *= gain;
  return out;
}

AudioSignal mix(const AudioSignal& a, const AudioSignal& b, double weight_a,
                double weight_b, bool truncate_to_shorter) {
  if (a.sample_rate_hz != b.sample_rate_hz) {
    throw DataError("mix: sample rates differ (" +
                    std::to_string(a.sample_rate_hz) + " vs " +
                    std::to_string(b.sample_rate_hz) + ")");
  }
  if (!std::isfinite(weight_a) || !std::isfinite(weight_b)) {
    throw ParamError("mix: weights must be finite");
  }
  std::size_t n;
  if (a.size() == b.size()) {
    n = a.size();
  } else if (truncate_to_shorter) {
    n = std::min(a.size(), b.size());
  } else {
    throw DataError("mix: lengths differ (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) +
                    ") and truncation is off");
  }
  if (n == 0) {
    throw DataError("mix: empty input");
  }
  AudioSignal out;
  out.sample_rate_hz = a.sample_rate_hz;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = weight_a * a.samples[i] + weight_b * b.samples[i];
  }
  return out;
}

std::pair<AudioSignal, AudioSignal> split_train_validation(
    const AudioSignal& signal, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParamError("split: train_fraction must lie strictly in (0, 1)");
  }
  if (signal.samples.empty()) {
    throw DataError("split: empty signal");
  }
  const std::size_t n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(signal.size()) * train_fraction));
  AudioSignal head, tail;
  head.sample_rate_hz = tail.sample_rate_hz = signal.sample_rate_hz;
  head.samples.assign(signal.samples.begin(),
                      signal.samples.begin() + n_train);
  tail.samples.assign(signal.samples.begin() + n_train, signal.samples.end());
  return {std::move(head), std::move(tail)};
}

AudioSignal synth_impulse_train(double pulse_rate_hz, double decay_per_sample,
                                double duration_s, int sample_rate_hz,
                                std::uint64_t seed) {
  if (sample_rate_hz <= 0) {
    throw ParamError("impulse train: sample rate must be positive");
  }
  if (!(duration_s > 0.0)) {
    throw ParamError("impulse train: duration must be positive");
  }
  if (!(pulse_rate_hz > 0.0) || pulse_rate_hz >= sample_rate_hz / 2.0) {
    throw ParamError(
        "impulse train: pulse rate must be positive and below half the "
        "sample rate");
  }
  if (!(decay_per_sample > 0.0 && decay_per_sample < 1.0)) {
    throw ParamError(
        "impulse train: decay per sample must lie strictly in (0, 1)");
  }

  const std::size_t n =
      static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n == 0) {
    throw ParamError("impulse train: duration rounds to zero samples");
  }

  AudioSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.assign(n, 0.0);

  const double period = sample_rate_hz / pulse_rate_hz;  // samples
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);

  // A tail below 1e-8 contributes nothing visible; cut it there.
  const std::size_t tail_len = static_cast<std::size_t>(
      std::ceil(std::log(1e-8) / std::log(decay_per_sample)));

  for (std::size_t i = 0;; ++i) {
    const double nominal = (static_cast<double>(i) + 0.5) * period;
    if (nominal >= static_cast<double>(n)) break;
    const double jittered = nominal + jitter(rng) * period;
    const auto onset = static_cast<long long>(std::llround(jittered));
    if (onset < 0 || onset >= static_cast<long long>(n)) continue;
    double amp = 1.0;
    const std::size_t end =
        std::min(n, static_cast<std::size_t>(onset) + tail_len);
    for (std::size_t t = static_cast<std::size_t>(onset); t < end; ++t) {
      out.samples[t] += amp;
      amp *= decay_per_sample;
    }
  }
  return out;
}

AudioSignal synth_band_noise(double low_hz, double high_hz, double duration_s,
                             int sample_rate_hz, std::uint64_t seed) {
  if (sample_rate_hz <= 0) {
    throw ParamError("band noise: sample rate must be positive");
  }
  if (!(duration_s > 0.0)) {
    throw ParamError("band noise: duration must be positive");
  }
  if (!(low_hz >= 0.0) || !(low_hz < high_hz) ||
      !(high_hz <= sample_rate_hz / 2.0)) {
    throw ParamError(
        "band noise: band must satisfy 0 <= low < high <= sample_rate / 2");
  }

  const std::size_t n =
      static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n == 0) {
    throw ParamError("band noise: duration rounds to zero samples");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> white(n);
  for (double& s : white) s = gauss(rng);

  // Ideal band-pass: zero every DFT bin outside [low_hz, high_hz].
  RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(white.data(), spectrum.data());
  const double bin_hz = static_cast<double>(sample_rate_hz) / n;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = k * bin_hz;
    if (f < low_hz || f > high_hz) spectrum[k] = 0.0;
  }

  AudioSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n);
  fft.inverse(spectrum.data(), out.samples.data());
  return out;
}

}  // namespace tfmsep
