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

#ifndef TFMSEP_AUDIO_HPP_
#define TFMSEP_AUDIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tfmsep {

// A mono signal: double samples at a fixed sample rate.
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate_hz = 44100;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

enum class WavEncoding {
  kPcm16,    // 16-bit signed integer PCM
  kFloat32,  // 32-bit IEEE float
};

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit float samples.
// PCM values are scaled by 1/32768 so full scale maps to [-1, 1).
// Multichannel files require an explicit channel index; without one only
// mono files are accepted. Unsupported codecs, malformed headers, empty
// data, and out-of-range channel indices raise DataError.
AudioSignal read_wav(const std::string& path,
                     std::optional<int> channel = std::nullopt);

// Writes a mono RIFF/WAVE file. With kPcm16, samples outside [-1, 1) are
// clamped and a warning with the clip count goes to stderr. With kFloat32
// samples are stored verbatim (narrowed to float) and a fact chunk is
// emitted. Non-finite samples raise NumericError, I/O failures DataError.
void write_wav(const std::string& path, const AudioSignal& signal,
               WavEncoding encoding = WavEncoding::kFloat32);

// Root mean square of the samples. Empty signal raises DataError.
double rms(const AudioSignal& signal);

// Scales the signal to RMS 1. An all-zero signal raises DataError: there
// is no finite gain that reaches unit power.
AudioSignal normalize_power(const AudioSignal& signal);

// out[n] = weight_a * a[n] + weight_b * b[n]. Sample rates must match.
// Lengths must match too unless truncate_to_shorter is set, in which case
// the longer input is cut to the shorter length.
AudioSignal mix(const AudioSignal& a, const AudioSignal& b, double weight_a,
                double weight_b, bool truncate_to_shorter = false);

// Splits into a leading part of floor(size * train_fraction) samples and
// the remainder. The two parts concatenate back to the input exactly.
// train_fraction must lie strictly inside (0, 1).
std::pair<AudioSignal, AudioSignal> split_train_validation(
    const AudioSignal& signal, double train_fraction);

// Percussive synthetic source: a train of unit impulses at pulse_rate_hz,
// each onset jittered by up to +/-2% of the period (seeded), and each
// followed by an exponential decay tail, factor decay_per_sample per
// sample. Requires 0 < decay_per_sample < 1 and
// pulse_rate_hz < sample_rate_hz / 2.
AudioSignal synth_impulse_train(double pulse_rate_hz, double decay_per_sample,
                                double duration_s, int sample_rate_hz,
                                std::uint64_t seed);

// Stationary synthetic source: seeded white Gaussian noise band-limited to
// [low_hz, high_hz] with an ideal (brick-wall) frequency-domain filter.
// Requires 0 <= low_hz < high_hz <= sample_rate_hz / 2.
AudioSignal synth_band_noise(double low_hz, double high_hz, double duration_s,
                             int sample_rate_hz, std::uint64_t seed);

}  // namespace tfmsep

#endif  // TFMSEP_AUDIO_HPP_
