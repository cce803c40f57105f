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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tfmsep/audio.hpp"
#include "tfmsep/errors.hpp"
#include "tfmsep/spectral.hpp"

using tfmsep::AudioSignal;
using tfmsep::DataError;
using tfmsep::FeatureStats;
using tfmsep::ParamError;
using tfmsep::RealMatrix;
using tfmsep::Spectrogram;
using tfmsep::StftParams;

namespace {

AudioSignal noise_signal(std::size_t n, std::uint64_t seed,
                         int sample_rate_hz = 8000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  AudioSignal s;
  s.sample_rate_hz = sample_rate_hz;
  s.samples.resize(n);
  for (double& v : s.samples) v = dist(rng);
  return s;
}

// Reference window recomputed from the defining formula, kept separate
// from the library's mirrored evaluation.
std::vector<double> reference_hann(int len) {
  std::vector<double> w(len);
  for (int i = 0; i < len; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (len - 1)));
  }
  return w;
}

// Frame index f, bin k of the windowed transform by direct summation.
std::complex<double> direct_stft_bin(const AudioSignal& x,
                                     const StftParams& p, std::size_t f,
                                     int k) {
  const std::vector<double> w = reference_hann(p.window_len);
  const std::size_t start = f * static_cast<std::size_t>(p.hop);
  std::complex<double> acc(0.0, 0.0);
  for (int t = 0; t < p.window_len; ++t) {
    const double phase = -2.0 * M_PI * k * t / static_cast<double>(p.fft_len);
    acc += w[t] * x.samples[start + t] *
           std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace

TEST_CASE("hann window matches hand values") {
  const std::vector<double> w4 = tfmsep::hann_window(4);
  REQUIRE(w4.size() == 4);
  CHECK(w4[0] == 0.0);
  CHECK(w4[3] == 0.0);
  CHECK(w4[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(w4[2] == doctest::Approx(0.75).epsilon(1e-12));

  const std::vector<double> w5 = tfmsep::hann_window(5);
  CHECK(w5[0] == 0.0);
  CHECK(w5[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w5[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w5[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w5[4] == 0.0);

  const std::vector<double> w2 = tfmsep::hann_window(2);
  CHECK(w2[0] == 0.0);
  CHECK(w2[1] == 0.0);
}

TEST_CASE("hann window is bitwise symmetric with exactly zero endpoints") {
  for (int len : {63, 64, 128, 129}) {
    const std::vector<double> w = tfmsep::hann_window(len);
    CHECK(w.front() == 0.0);
    CHECK(w.back() == 0.0);
    for (int i = 0; i < len; ++i) {
      CHECK(w[i] == w[len - 1 - i]);  // bitwise, not approximate
      CHECK(w[i] >= 0.0);
      CHECK(w[i] <= 1.0);
    }
    const std::vector<double> ref = reference_hann(len);
    for (int i = 0; i < len; ++i) {
      CHECK(std::abs(w[i] - ref[i]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(tfmsep::hann_window(1), ParamError);
  CHECK_THROWS_AS(tfmsep::hann_window(0), ParamError);
}

TEST_CASE("stft_frame_count agrees with direct enumeration") {
  for (int window : {4, 16, 128}) {
    for (int hop : {1, 3, 64}) {
      StftParams p;
      p.window_len = window;
      p.hop = hop;
      p.fft_len = window;
      for (std::size_t len :
           {std::size_t{0}, std::size_t{3}, std::size_t{4}, std::size_t{127},
            std::size_t{128}, std::size_t{129}, std::size_t{1000}}) {
        std::size_t brute = 0;
        for (std::size_t s = 0; s + window <= len;
             s += static_cast<std::size_t>(hop)) {
          ++brute;
        }
        CHECK(tfmsep::stft_frame_count(len, p) == brute);
      }
    }
  }

  StftParams dense;  // 1 s at 44.1 kHz, unit hop
  CHECK(tfmsep::stft_frame_count(44100, dense) == 43973u);
  StftParams coarse;  // 10 s at 16 kHz, hop 64
  coarse.hop = 64;
  CHECK(tfmsep::stft_frame_count(160000, coarse) == 2499u);
}

TEST_CASE("stft of a constant signal puts its energy at DC") {
  AudioSignal s;
  s.sample_rate_hz = 8000;
  s.samples.assign(512, 1.0);
  StftParams p;
  p.hop = 64;
  const Spectrogram spec = tfmsep::stft(s, p);
  REQUIRE(spec.bins() == 65);
  REQUIRE(spec.frames() ==
          static_cast<tfmsep::Index>(tfmsep::stft_frame_count(512, p)));
  CHECK(spec.sample_rate_hz == 8000);
  CHECK(spec.origin_len == 512u);

  // Window sum for the 128-point Hann: 0.5*128 - 0.5*sum(cos) = 63.5.
  const double window_sum = 63.5;
  for (tfmsep::Index f = 0; f < spec.frames(); ++f) {
    CHECK(std::abs(spec.data(0, f).real() - window_sum) < 1e-9);
    CHECK(std::abs(spec.data(0, f).imag()) < 1e-9);
    // The window's own spectrum leaks into bin 1; beyond that it is tiny.
    for (tfmsep::Index k = 2; k < spec.bins(); ++k) {
      CHECK(std::abs(spec.data(k, f)) < 0.01 * window_sum);
    }
  }
}

TEST_CASE("stft bins match a direct windowed DFT") {
  const AudioSignal x = noise_signal(600, 17);
  StftParams p;
  p.hop = 64;
  const Spectrogram spec = tfmsep::stft(x, p);
  REQUIRE(spec.frames() == 8);
  for (std::size_t f : {std::size_t{0}, std::size_t{3}, std::size_t{7}}) {
    for (int k : {0, 1, 5, 31, 64}) {
      const std::complex<double> want = direct_stft_bin(x, p, f, k);
      const std::complex<double> got = spec.data(k, static_cast<int>(f));
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("stft zero-pads the frame when fft_len exceeds window_len") {
  const AudioSignal x = noise_signal(400, 23);
  StftParams p;
  p.window_len = 128;
  p.hop = 32;
  p.fft_len = 256;
  const Spectrogram spec = tfmsep::stft(x, p);
  REQUIRE(spec.bins() == 129);
  for (int k : {0, 7, 100, 128}) {
    const std::complex<double> want = direct_stft_bin(x, p, 1, k);
    CHECK(std::abs(spec.data(k, 1) - want) < 1e-9);
  }
}

TEST_CASE("stft validates parameters and input length") {
  const AudioSignal x = noise_signal(100, 3);
  StftParams p;
  CHECK_THROWS_AS(tfmsep::stft(x, p), DataError);  // shorter than one window

  StftParams bad = p;
  bad.hop = 0;
  CHECK_THROWS_AS(tfmsep::stft(noise_signal(256, 3), bad), ParamError);
  bad = p;
  bad.fft_len = 64;  // smaller than the window
  CHECK_THROWS_AS(tfmsep::stft(noise_signal(256, 3), bad), ParamError);
  bad = p;
  bad.window_len = 1;
  CHECK_THROWS_AS(tfmsep::stft(noise_signal(256, 3), bad), ParamError);
}

TEST_CASE("istft round trip is exact where the envelope reaches") {
  // Unit hop: every sample except the two dead endpoints is covered with
  // positive weight, so reconstruction there is exact up to rounding.
  const AudioSignal x = noise_signal(2000, 41);
  StftParams p;  // window 128, hop 1, fft 128
  const Spectrogram spec = tfmsep::stft(x, p);
  const AudioSignal back = tfmsep::istft(spec);
  REQUIRE(back.size() == x.size());
  CHECK(back.sample_rate_hz == x.sample_rate_hz);
  CHECK(back.samples[0] == 0.0);
  CHECK(back.samples[x.size() - 1] == 0.0);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    worst = std::max(worst, std::abs(back.samples[i] - x.samples[i]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("istft round trip with hop 64 and with zero padding") {
  StftParams hop64;
  hop64.hop = 64;
  // (8000 - 128) divides by 64, so the frames cover the whole signal.
  const AudioSignal x = noise_signal(8000, 43);
  const AudioSignal back = tfmsep::istft(tfmsep::stft(x, hop64));
  REQUIRE(back.size() == 8000);
  CHECK(back.samples[0] == 0.0);
  CHECK(back.samples[7999] == 0.0);
  for (std::size_t i = 1; i + 1 < 8000; ++i) {
    CHECK(std::abs(back.samples[i] - x.samples[i]) < 1e-9);
  }

  StftParams padded;
  padded.window_len = 128;
  padded.hop = 32;
  padded.fft_len = 256;
  const AudioSignal x2 = noise_signal(1000, 44);
  const AudioSignal back2 = tfmsep::istft(tfmsep::stft(x2, padded));
  REQUIRE(back2.size() == 1000);
  // Covered span ends at 27*32 + 128 = 992; the tail has no frames.
  for (std::size_t i = 1; i + 1 < 992; ++i) {
    CHECK(std::abs(back2.samples[i] - x2.samples[i]) < 1e-9);
  }
  for (std::size_t i = 992; i < 1000; ++i) {
    CHECK(back2.samples[i] == 0.0);
  }
}

TEST_CASE("istft rejects geometry that cannot reconstruct") {
  // hop == window_len with a zero-endpoint window: seam samples inside the
  // covered span get zero envelope.
  AudioSignal x = noise_signal(64, 45);
  StftParams gap;
  gap.window_len = 8;
  gap.hop = 8;
  gap.fft_len = 8;
  const Spectrogram spec = tfmsep::stft(x, gap);
  CHECK_THROWS_AS(tfmsep::istft(spec), ParamError);
}

TEST_CASE("istft validates the spectrogram against its declared origin") {
  const AudioSignal x = noise_signal(1000, 46);
  StftParams p;
  p.hop = 16;
  Spectrogram spec = tfmsep::stft(x, p);

  Spectrogram wrong = spec;
  wrong.origin_len = 500;  // frame count no longer matches
  CHECK_THROWS_AS(tfmsep::istft(wrong), DataError);

  Spectrogram empty;
  empty.params = p;
  empty.origin_len = 1000;
  CHECK_THROWS_AS(tfmsep::istft(empty), DataError);

  Spectrogram bad_bins = spec;
  bad_bins.data.conservativeResize(10, spec.frames());
  CHECK_THROWS_AS(tfmsep::istft(bad_bins), DataError);
}

TEST_CASE("magnitude is the entrywise modulus") {
  Spectrogram spec;
  spec.data.resize(2, 2);
  spec.data(0, 0) = {3.0, 4.0};
  spec.data(0, 1) = {0.0, -2.0};
  spec.data(1, 0) = {-1.0, 0.0};
  spec.data(1, 1) = {0.0, 0.0};
  const RealMatrix m = tfmsep::magnitude(spec);
  CHECK(m(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(m(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m(1, 1) == 0.0);
}

TEST_CASE("log_features standardizes to zero mean and unit deviation") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  RealMatrix mag(33, 21);
  for (tfmsep::Index r = 0; r < mag.rows(); ++r) {
    for (tfmsep::Index c = 0; c < mag.cols(); ++c) {
      mag(r, c) = dist(rng);
    }
  }
  auto [f, stats] = tfmsep::log_features(mag);

  // Recompute the moments with plain accumulation.
  double mean = 0.0;
  for (tfmsep::Index r = 0; r < f.rows(); ++r) {
    for (tfmsep::Index c = 0; c < f.cols(); ++c) mean += f(r, c);
  }
  mean /= static_cast<double>(f.size());
  double var = 0.0;
  for (tfmsep::Index r = 0; r < f.rows(); ++r) {
    for (tfmsep::Index c = 0; c < f.cols(); ++c) {
      var += (f(r, c) - mean) * (f(r, c) - mean);
    }
  }
  var /= static_cast<double>(f.size());
  CHECK(std::abs(mean) < 1e-9);
  CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);

  // The stats invert the transform back to log(mag + eps).
  for (tfmsep::Index r = 0; r < f.rows(); ++r) {
    for (tfmsep::Index c = 0; c < f.cols(); ++c) {
      const double undone = f(r, c) * stats.std_dev + stats.mean;
      CHECK(std::abs(undone - std::log(mag(r, c) + stats.epsilon)) < 1e-12);
    }
  }
}

TEST_CASE("log_features replay reproduces the fitted transform") {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  RealMatrix mag(8, 9);
  for (tfmsep::Index r = 0; r < mag.rows(); ++r) {
    for (tfmsep::Index c = 0; c < mag.cols(); ++c) mag(r, c) = dist(rng);
  }
  auto [fitted, stats] = tfmsep::log_features(mag);
  const RealMatrix replayed = tfmsep::log_features(mag, stats);
  for (tfmsep::Index r = 0; r < mag.rows(); ++r) {
    for (tfmsep::Index c = 0; c < mag.cols(); ++c) {
      CHECK(std::abs(replayed(r, c) - fitted(r, c)) < 1e-15);
    }
  }

  // Hand check of the replay formula on fixed stats.
  FeatureStats hand;
  hand.mean = 1.5;
  hand.std_dev = 2.0;
  hand.epsilon = 1e-10;
  RealMatrix one(1, 1);
  one(0, 0) = 3.0;
  const RealMatrix out = tfmsep::log_features(one, hand);
  CHECK(std::abs(out(0, 0) - (std::log(3.0 + 1e-10) - 1.5) / 2.0) < 1e-12);
}

TEST_CASE("log_features rejects degenerate input") {
  RealMatrix flat(4, 4);
  flat.setConstant(2.5);
  CHECK_THROWS_AS(tfmsep::log_features(flat), DataError);

  RealMatrix neg(2, 2);
  neg.setConstant(1.0);
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(tfmsep::log_features(neg), DataError);

  RealMatrix ok(2, 2);
  ok << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(tfmsep::log_features(ok, 0.0), ParamError);

  FeatureStats bad;
  bad.std_dev = 0.0;
  CHECK_THROWS_AS(tfmsep::log_features(ok, bad), ParamError);

  RealMatrix empty;
  CHECK_THROWS_AS(tfmsep::log_features(empty), DataError);
}

TEST_CASE("log_features handles exact zeros through the epsilon guard") {
  RealMatrix mag(2, 2);
  mag << 0.0, 1.0, 2.0, 3.0;
  auto [f, stats] = tfmsep::log_features(mag, 1e-10);
  CHECK(std::isfinite(f(0, 0)));
  // The zero cell maps to log(eps), far below the others.
  CHECK(f(0, 0) < f(0, 1));
  CHECK(stats.epsilon == 1e-10);
}
