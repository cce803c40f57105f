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

#ifndef TFMSEP_MASKING_HPP_
#define TFMSEP_MASKING_HPP_

#include "tfmsep/audio.hpp"
#include "tfmsep/spectral.hpp"
#include "tfmsep/types.hpp"

namespace tfmsep {

enum class MaskKind {
  kBinary,  // entries are exactly 0 or 1
  kSoft,    // entries lie in [0, 1]
};

// A time-frequency mask, same shape as the spectrogram it applies to.
// Construction checks the range for the declared kind and rejects
// non-finite entries.
struct Mask {
  RealMatrix data;
  MaskKind kind = MaskKind::kSoft;

  Mask() = default;
  Mask(RealMatrix values, MaskKind kind);
};

// Ratio mask of source a against b: a / (a + b) per cell. Cells where both
// magnitudes are zero carry no evidence either way and get 0.5. Inputs are
// magnitudes (entries >= 0) of equal shape.
Mask soft_mask(const RealMatrix& mag_a, const RealMatrix& mag_b);

// Winner-take-all mask of source a against b: 1 where a's power is at
// least b's, else 0. Ties go to a, so the mask and its complement still
// partition every cell. Compared on magnitudes, which ranks identically
// to power without squaring into overflow.
Mask binary_mask(const RealMatrix& mag_a, const RealMatrix& mag_b);

// The mask selecting everything this one does not: 1 - data. A binary
// complement stays binary.
Mask complement(const Mask& mask);

// Scales each mixture cell by the mask value, keeping the mixture phase.
// Shapes must match.
Spectrogram apply_mask(const Mask& mask, const Spectrogram& mixture);

// apply_mask followed by the inverse transform: the masked time-domain
// estimate, reconstructed with the mixture's phase.
AudioSignal reconstruct(const Mask& mask, const Spectrogram& mixture);

}  // namespace tfmsep

#endif  // TFMSEP_MASKING_HPP_
