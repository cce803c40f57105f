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

#ifndef TFMSEP_SPECTRAL_HPP_
#define TFMSEP_SPECTRAL_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "tfmsep/audio.hpp"
#include "tfmsep/types.hpp"

namespace tfmsep {

// Short-time transform geometry. fft_len >= window_len; frames are spaced
// hop samples apart and only full frames are taken (no tail padding).
struct StftParams {
  int window_len = 128;
  int hop = 1;
  int fft_len = 128;

  int bins() const { return fft_len / 2 + 1; }

  // Raises ParamError unless window_len >= 2, 1 <= hop, and
  // fft_len >= window_len.
  void validate() const;
};

// Complex spectrogram, bins x frames, column per frame. origin_len is the
// length of the analyzed signal; keeping it makes the inverse transform
// restore the exact original length.
struct Spectrogram {
  ComplexMatrix data;
  StftParams params;
  int sample_rate_hz = 0;
  std::size_t origin_len = 0;

  Index bins() const { return data.rows(); }
  Index frames() const { return data.cols(); }
};

// Mean and spread used to standardize log-magnitude features, together
// with the epsilon guard applied before the log. Persisted with a trained
// model so inference reproduces the training transform.
struct FeatureStats {
  double mean = 0.0;
  double std_dev = 1.0;
  double epsilon = 1e-10;
};

// Symmetric Hann window: w[n] = 0.5 * (1 - cos(2*pi*n / (len - 1))).
// Endpoints are exactly zero and w[n] == w[len-1-n] bitwise (the second
// half mirrors the first). len < 2 raises ParamError.
std::vector<double> hann_window(int len);

// Number of full analysis frames for a signal of signal_len samples:
// 0 if signal_len < window_len, else (signal_len - window_len) / hop + 1.
std::size_t stft_frame_count(std::size_t signal_len, const StftParams& params);

// Windowed short-time Fourier transform. Each frame is multiplied by the
// Hann window, zero-padded to fft_len, and transformed; column f holds the
// non-negative-frequency half (fft_len/2 + 1 bins) of frame f. A signal
// shorter than one window raises DataError.
Spectrogram stft(const AudioSignal& signal, const StftParams& params);

// Weighted overlap-add inverse. Each frame is inverted, re-windowed, and
// accumulated; the result is divided by the accumulated squared-window
// envelope, which makes the round trip istft(stft(x)) exact (up to
// rounding) wherever the envelope is positive. Samples the envelope does
// not reach (the window's zero endpoints leave the first and last sample
// of the covered span untouched, and frames never reach past origin_len)
// are emitted as zeros. If the envelope vanishes strictly inside the
// covered span the parameters cannot reconstruct anything there and
// ParamError is raised.
AudioSignal istft(const Spectrogram& spec);

// Entrywise modulus of the spectrogram.
RealMatrix magnitude(const Spectrogram& spec);

// log(mag + epsilon), standardized to zero mean and unit standard
// deviation over all entries. Returns the features and the stats used, so
// the same transform can be replayed at inference time. A constant
// magnitude matrix (zero spread) raises DataError.
std::pair<RealMatrix, FeatureStats> log_features(const RealMatrix& mag,
                                                 double epsilon = 1e-10);

// Replays a stored transform: (log(mag + stats.epsilon) - mean) / std_dev.
RealMatrix log_features(const RealMatrix& mag, const FeatureStats& stats);

}  // namespace tfmsep

#endif  // TFMSEP_SPECTRAL_HPP_
