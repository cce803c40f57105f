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

#include "tfmsep/errors.hpp"
#include "tfmsep/masking.hpp"
#include "tfmsep/spectral.hpp"

using tfmsep::AudioSignal;
using tfmsep::ComplexMatrix;
using tfmsep::DataError;
using tfmsep::Index;
using tfmsep::Mask;
using tfmsep::MaskKind;
using tfmsep::NumericError;
using tfmsep::RealMatrix;
using tfmsep::Spectrogram;

namespace {

RealMatrix random_magnitudes(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 3.0);
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = dist(rng);
  }
  return m;
}

ComplexMatrix random_complex(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = {dist(rng), dist(rng)};
  }
  return m;
}

}  // namespace

TEST_CASE("soft mask is the per-cell magnitude ratio") {
  RealMatrix a(2, 2), b(2, 2);
  a << 1.0, 3.0, 0.0, 2.0;
  b << 1.0, 1.0, 4.0, 0.0;
  const Mask m = tfmsep::soft_mask(a, b);
  CHECK(m.kind == MaskKind::kSoft);
  CHECK(m.data(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.data(0, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.data(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.data(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("soft mask puts 0.5 where both magnitudes vanish") {
  RealMatrix a = RealMatrix::Zero(3, 3);
  RealMatrix b = RealMatrix::Zero(3, 3);
  a(1, 1) = 2.0;
  const Mask m = tfmsep::soft_mask(a, b);
  for (Index r = 0; r < 3; ++r) {
    for (Index c = 0; c < 3; ++c) {
      if (r == 1 && c == 1) {
        CHECK(m.data(r, c) == 1.0);
      } else {
        CHECK(m.data(r, c) == 0.5);
      }
    }
  }
}

TEST_CASE("soft masks of a pair are exact complements") {
  const RealMatrix a = random_magnitudes(16, 11, 1);
  const RealMatrix b = random_magnitudes(16, 11, 2);
  const Mask ma = tfmsep::soft_mask(a, b);
  const Mask mb = tfmsep::soft_mask(b, a);
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      CHECK(std::abs(ma.data(r, c) + mb.data(r, c) - 1.0) < 1e-15);
      CHECK(ma.data(r, c) >= 0.0);
      CHECK(ma.data(r, c) <= 1.0);
    }
  }
}

TEST_CASE("soft mask is invariant to common scaling") {
  const RealMatrix a = random_magnitudes(8, 8, 3);
  const RealMatrix b = random_magnitudes(8, 8, 4);
  const Mask base = tfmsep::soft_mask(a, b);
  for (double c : {1e-6, 0.5, 100.0, 1e9}) {
    const Mask scaled = tfmsep::soft_mask(c * a, c * b);
    for (Index r = 0; r < a.rows(); ++r) {
      for (Index j = 0; j < a.cols(); ++j) {
        CHECK(std::abs(scaled.data(r, j) - base.data(r, j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("binary mask takes the stronger cell and gives ties to a") {
  RealMatrix a(2, 2), b(2, 2);
  a << 2.0, 1.0, 0.0, 1.5;
  b << 1.0, 1.0, 0.0, 2.0;
  const Mask m = tfmsep::binary_mask(a, b);
  CHECK(m.kind == MaskKind::kBinary);
  CHECK(m.data(0, 0) == 1.0);
  CHECK(m.data(0, 1) == 1.0);  // tie
  CHECK(m.data(1, 0) == 1.0);  // zero-zero tie
  CHECK(m.data(1, 1) == 0.0);

  const Mask comp = tfmsep::complement(m);
  CHECK(comp.kind == MaskKind::kBinary);
  for (Index r = 0; r < 2; ++r) {
    for (Index c = 0; c < 2; ++c) {
      CHECK(m.data(r, c) + comp.data(r, c) == 1.0);
    }
  }
}

TEST_CASE("binary mask is invariant to common scaling") {
  const RealMatrix a = random_magnitudes(12, 9, 5);
  const RealMatrix b = random_magnitudes(12, 9, 6);
  const Mask base = tfmsep::binary_mask(a, b);
  for (double c : {1e-8, 0.25, 1000.0}) {
    const Mask scaled = tfmsep::binary_mask(c * a, c * b);
    for (Index r = 0; r < a.rows(); ++r) {
      for (Index j = 0; j < a.cols(); ++j) {
        CHECK(scaled.data(r, j) == base.data(r, j));
      }
    }
  }
}

TEST_CASE("complement of a soft mask flips every cell") {
  const RealMatrix a = random_magnitudes(7, 5, 7);
  const RealMatrix b = random_magnitudes(7, 5, 8);
  const Mask m = tfmsep::soft_mask(a, b);
  const Mask comp = tfmsep::complement(m);
  CHECK(comp.kind == MaskKind::kSoft);
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      CHECK(std::abs(comp.data(r, c) - (1.0 - m.data(r, c))) < 1e-15);
    }
  }
}

TEST_CASE("mask construction checks range kind and finiteness") {
  RealMatrix soft_ok(2, 2);
  soft_ok << 0.0, 0.5, 0.25, 1.0;
  CHECK_NOTHROW(Mask(soft_ok, MaskKind::kSoft));
  CHECK_THROWS_AS(Mask(soft_ok, MaskKind::kBinary), DataError);

  RealMatrix out_of_range(1, 2);
  out_of_range << 0.5, 1.2;
  CHECK_THROWS_AS(Mask(out_of_range, MaskKind::kSoft), DataError);
  out_of_range << -0.1, 0.5;
  CHECK_THROWS_AS(Mask(out_of_range, MaskKind::kSoft), DataError);

  RealMatrix nan_mat(1, 1);
  nan_mat << std::nan("");
  CHECK_THROWS_AS(Mask(nan_mat, MaskKind::kSoft), NumericError);

  RealMatrix binary_ok(1, 2);
  binary_ok << 0.0, 1.0;
  CHECK_NOTHROW(Mask(binary_ok, MaskKind::kBinary));
}

TEST_CASE("mask builders validate their inputs") {
  const RealMatrix a = random_magnitudes(4, 4, 9);
  const RealMatrix wrong_shape = random_magnitudes(4, 5, 10);
  CHECK_THROWS_AS(tfmsep::soft_mask(a, wrong_shape), DataError);
  CHECK_THROWS_AS(tfmsep::binary_mask(a, wrong_shape), DataError);

  RealMatrix negative = a;
  negative(2, 2) = -1.0;
  CHECK_THROWS_AS(tfmsep::soft_mask(a, negative), DataError);
  CHECK_THROWS_AS(tfmsep::binary_mask(negative, a), DataError);
}

TEST_CASE("masked pair reassembles the mixture exactly") {
  Spectrogram mixture;
  mixture.data = random_complex(33, 18, 11);
  const RealMatrix a = random_magnitudes(33, 18, 12);
  const RealMatrix b = random_magnitudes(33, 18, 13);

  for (bool soft : {true, false}) {
    const Mask m =
        soft ? tfmsep::soft_mask(a, b) : tfmsep::binary_mask(a, b);
    const Spectrogram part_a = tfmsep::apply_mask(m, mixture);
    const Spectrogram part_b = tfmsep::apply_mask(tfmsep::complement(m), mixture);
    for (Index r = 0; r < mixture.data.rows(); ++r) {
      for (Index c = 0; c < mixture.data.cols(); ++c) {
        const std::complex<double> sum =
            part_a.data(r, c) + part_b.data(r, c);
        CHECK(std::abs(sum - mixture.data(r, c)) < 1e-12);
      }
    }
  }
}

TEST_CASE("apply_mask scales magnitude and keeps the mixture phase") {
  Spectrogram mixture;
  mixture.data = random_complex(9, 7, 14);
  const RealMatrix a = random_magnitudes(9, 7, 15);
  const RealMatrix b = random_magnitudes(9, 7, 16);
  const Mask m = tfmsep::soft_mask(a, b);
  const Spectrogram masked = tfmsep::apply_mask(m, mixture);
  REQUIRE(masked.data.rows() == mixture.data.rows());
  REQUIRE(masked.data.cols() == mixture.data.cols());
  for (Index r = 0; r < mixture.data.rows(); ++r) {
    for (Index c = 0; c < mixture.data.cols(); ++c) {
      const std::complex<double> mix = mixture.data(r, c);
      const std::complex<double> out = masked.data(r, c);
      CHECK(std::abs(std::abs(out) - m.data(r, c) * std::abs(mix)) < 1e-12);
      if (m.data(r, c) > 1e-6 && std::abs(mix) > 1e-6) {
        // Same phase: the cross product of (re, im) pairs vanishes and the
        // dot product stays non-negative.
        CHECK(std::abs(out.real() * mix.imag() - out.imag() * mix.real()) <
              1e-12);
        CHECK(out.real() * mix.real() + out.imag() * mix.imag() >= 0.0);
      }
    }
  }

  Spectrogram wrong = mixture;
  wrong.data.conservativeResize(8, 7);
  CHECK_THROWS_AS(tfmsep::apply_mask(m, wrong), DataError);
}

TEST_CASE("reconstruct with an all-ones mask inverts the mixture") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  AudioSignal x;
  x.sample_rate_hz = 8000;
  x.samples.resize(1024);
  for (double& v : x.samples) v = dist(rng);

  tfmsep::StftParams p;
  p.hop = 16;
  const Spectrogram spec = tfmsep::stft(x, p);
  Mask ones(RealMatrix::Ones(spec.bins(), spec.frames()), MaskKind::kSoft);
  const AudioSignal back = tfmsep::reconstruct(ones, spec);
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    CHECK(std::abs(back.samples[i] - x.samples[i]) < 1e-9);
  }
}
