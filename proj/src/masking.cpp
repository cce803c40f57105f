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

#include "tfmsep/masking.hpp"

#include <string>

#include "tfmsep/errors.hpp"

namespace tfmsep {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError(std::string(what) + ": shapes differ (" +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()) + ")");
  }
}

void require_magnitudes(const RealMatrix& m, const char* what) {
  if (m.size() == 0) {
    throw DataError(std::string(what) + ": empty magnitude matrix");
  }
  if (!m.allFinite()) {
    throw NumericError(std::string(what) + ": non-finite magnitude entry");
  }
  if (m.minCoeff() < 0.0) {
    throw DataError(std::string(what) + ": magnitudes must be non-negative");
  }
}

}  // namespace

Mask::Mask(RealMatrix values, MaskKind k) : data(std::move(values)), kind(k) {
  if (data.size() == 0) {
    throw DataError("mask: empty");
  }
  if (!data.allFinite()) {
    throw NumericError("mask: non-finite entry");
  }
  if (kind == MaskKind::kBinary) {
    if (((data.array() != 0.0) && (data.array() != 1.0)).any()) {
      throw DataError("mask: binary mask entries must be exactly 0 or 1");
    }
  } else {
    if (data.minCoeff() < 0.0 || data.maxCoeff() > 1.0) {
      throw DataError("mask: soft mask entries must lie in [0, 1]");
    }
  }
}

Mask soft_mask(const RealMatrix& mag_a, const RealMatrix& mag_b) {
  require_magnitudes(mag_a, "soft_mask");
  require_magnitudes(mag_b, "soft_mask");
  require_same_shape(mag_a, mag_b, "soft_mask");
  RealMatrix m(mag_a.rows(), mag_a.cols());
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      const double denom = mag_a(r, c) + mag_b(r, c);
      // Both magnitudes zero: the cell is silent in both sources, split it
      // evenly rather than dividing 0/0.
      m(r, c) = denom > 0.0 ? mag_a(r, c) / denom : 0.5;
    }
  }
  return Mask(std::move(m), MaskKind::kSoft);
}

Mask binary_mask(const RealMatrix& mag_a, const RealMatrix& mag_b) {
  require_magnitudes(mag_a, "binary_mask");
  require_magnitudes(mag_b, "binary_mask");
  require_same_shape(mag_a, mag_b, "binary_mask");
  RealMatrix m = (mag_a.array() >= mag_b.array()).cast<double>().matrix();
  return Mask(std::move(m), MaskKind::kBinary);
}

Mask complement(const Mask& mask) {
  return Mask((1.0 - mask.data.array()).matrix(), mask.kind);
}

Spectrogram apply_mask(const Mask& mask, const Spectrogram& mixture) {
  if (mask.data.rows() != mixture.data.rows() ||
      mask.data.cols() != mixture.data.cols()) {
    throw DataError("apply_mask: mask shape " +
                    std::to_string(mask.data.rows()) + "x" +
                    std::to_string(mask.data.cols()) +
                    " does not match spectrogram " +
                    std::to_string(mixture.data.rows()) + "x" +
                    std::to_string(mixture.data.cols()));
  }
  Spectrogram out = mixture;
  out.data = mixture.data.cwiseProduct(
      mask.data.cast<std::complex<double>>());
  return out;
}

AudioSignal reconstruct(const Mask& mask, const Spectrogram& mixture) {
  return istft(apply_mask(mask, mixture));
}

}  // namespace tfmsep
