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

#include "tfmsep/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tfmsep/errors.hpp"
#include "tfmsep/fft.hpp"

namespace tfmsep {

namespace {
// Envelope values at or below this are "not covered": the only way the
// accumulated squared Hann weight gets this small is the window's exact
// zero endpoints (or rounding dust of them).
constexpr double kEnvelopeFloor = 1e-12;
}  // namespace

void StftParams::validate() const {
  if (window_len < 2) {
    throw ParamError("stft: window_len must be at least 2");
  }
  if (hop < 1) {
    throw ParamError("stft: hop must be at least 1");
  }
  if (fft_len < window_len) {
    throw ParamError("stft: fft_len must be at least window_len");
  }
}

std::vector<double> hann_window(int len) {
  if (len < 2) {
    throw ParamError("hann_window: len must be at least 2");
  }
  std::vector<double> w(len);
  // Compute the first half and mirror it so symmetry is bitwise exact and
  // w[len-1] is exactly zero like w[0].
  const double denom = static_cast<double>(len - 1);
  for (int n = 0; n <= (len - 1) / 2; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / denom));
    w[len - 1 - n] = w[n];
  }
  return w;
}

std::size_t stft_frame_count(std::size_t signal_len,
                             const StftParams& params) {
  params.validate();
  const auto window = static_cast<std::size_t>(params.window_len);
  if (signal_len < window) return 0;
  return (signal_len - window) / static_cast<std::size_t>(params.hop) + 1;
}

Spectrogram stft(const AudioSignal& signal, const StftParams& params) {
  params.validate();
  const std::size_t n = signal.size();
  const auto window_len = static_cast<std::size_t>(params.window_len);
  if (n < window_len) {
    throw DataError("stft: signal (" + std::to_string(n) +
                    " samples) is shorter than one window (" +
                    std::to_string(window_len) + ")");
  }
  const std::size_t frames = stft_frame_count(n, params);
  const std::vector<double> window = hann_window(params.window_len);

  Spectrogram spec;
  spec.params = params;
  spec.sample_rate_hz = signal.sample_rate_hz;
  spec.origin_len = n;
  spec.data.resize(params.bins(), static_cast<Index>(frames));

  RealFft fft(static_cast<std::size_t>(params.fft_len));
  std::vector<double> frame(params.fft_len, 0.0);
  std::vector<std::complex<double>> out(fft.bins());
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * static_cast<std::size_t>(params.hop);
    for (std::size_t t = 0; t < window_len; ++t) {
      frame[t] = signal.samples[start + t] * window[t];
    }
    // frame[window_len..fft_len) stays zero: zero-padding.
    fft.forward(frame.data(), out.data());
    for (Index k = 0; k < spec.data.rows(); ++k) {
      spec.data(k, static_cast<Index>(f)) = out[static_cast<std::size_t>(k)];
    }
  }
  return spec;
}

AudioSignal istft(const Spectrogram& spec) {
  spec.params.validate();
  const StftParams& p = spec.params;
  if (spec.data.rows() != p.bins()) {
    throw DataError("istft: spectrogram has " + std::to_string(spec.data.rows()) +
                    " bins but the params imply " + std::to_string(p.bins()));
  }
  const std::size_t frames = static_cast<std::size_t>(spec.data.cols());
  if (frames == 0) {
    throw DataError("istft: spectrogram has no frames");
  }
  if (stft_frame_count(spec.origin_len, p) != frames) {
    throw DataError(
        "istft: origin_len does not match the frame count for these params");
  }

  const auto window_len = static_cast<std::size_t>(p.window_len);
  const auto hop = static_cast<std::size_t>(p.hop);
  const std::vector<double> window = hann_window(p.window_len);

  std::vector<double> acc(spec.origin_len, 0.0);
  std::vector<double> env(spec.origin_len, 0.0);

  RealFft fft(static_cast<std::size_t>(p.fft_len));
  std::vector<std::complex<double>> in(fft.bins());
  std::vector<double> frame(p.fft_len);
  for (std::size_t f = 0; f < frames; ++f) {
    for (Index k = 0; k < spec.data.rows(); ++k) {
      in[static_cast<std::size_t>(k)] = spec.data(k, static_cast<Index>(f));
    }
    fft.inverse(in.data(), frame.data());
    const std::size_t start = f * hop;
    // The analysis frame was zero beyond window_len, so the inverse
    // transform is too (up to rounding); only the first window_len
    // samples carry signal.
    for (std::size_t t = 0; t < window_len; ++t) {
      acc[start + t] += frame[t] * window[t];
      env[start + t] += window[t] * window[t];
    }
  }

  // Inside the covered span, at least one full window overlaps every
  // sample once we are a window away from either edge; a vanishing
  // envelope there means these params cannot reconstruct (e.g. hop ==
  // window_len with a zero-endpoint window leaves seam samples unheard).
  const std::size_t covered_end = (frames - 1) * hop + window_len;
  const std::size_t interior_begin = window_len - 1;
  const std::size_t interior_end =
      covered_end >= window_len - 1 ? covered_end - (window_len - 1) : 0;
  for (std::size_t t = interior_begin; t < interior_end; ++t) {
    if (env[t] <= kEnvelopeFloor) {
      throw ParamError(
          "istft: window/hop leave gaps with no analysis coverage; "
          "reconstruction is impossible with these params");
    }
  }

  AudioSignal out;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.samples.resize(spec.origin_len);
  for (std::size_t t = 0; t < spec.origin_len; ++t) {
    out.samples[t] = env[t] > kEnvelopeFloor ? acc[t] / env[t] : 0.0;
  }
  return out;
}

RealMatrix magnitude(const Spectrogram& spec) {
  return spec.data.cwiseAbs();
}

std::pair<RealMatrix, FeatureStats> log_features(const RealMatrix& mag,
                                                 double epsilon) {
  if (mag.size() == 0) {
    throw DataError("log_features: empty magnitude matrix");
  }
  if (!(epsilon > 0.0)) {
    throw ParamError("log_features: epsilon must be positive");
  }
  if (mag.minCoeff() < 0.0) {
    throw DataError("log_features: magnitudes must be non-negative");
  }
  RealMatrix f = (mag.array() + epsilon).log().matrix();
  FeatureStats stats;
  stats.epsilon = epsilon;
  stats.mean = f.mean();
  // Population standard deviation: the stats describe exactly this data.
  stats.std_dev =
      std::sqrt((f.array() - stats.mean).square().sum() / f.size());
  if (stats.std_dev < 1e-12) {
    throw DataError(
        "log_features: magnitude matrix is constant; features carry no "
        "information to standardize");
  }
  f.array() -= stats.mean;
  f.array() /= stats.std_dev;
  return {std::move(f), stats};
}

RealMatrix log_features(const RealMatrix& mag, const FeatureStats& stats) {
  if (mag.size() == 0) {
    throw DataError("log_features: empty magnitude matrix");
  }
  if (mag.minCoeff() < 0.0) {
    throw DataError("log_features: magnitudes must be non-negative");
  }
  if (!(stats.std_dev > 0.0) || !(stats.epsilon > 0.0)) {
    throw ParamError("log_features: stats must have positive std_dev and epsilon");
  }
  return (((mag.array() + stats.epsilon).log() - stats.mean) / stats.std_dev)
      .matrix();
}

}  // namespace tfmsep
