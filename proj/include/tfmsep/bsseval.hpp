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

#ifndef TFMSEP_BSSEVAL_HPP_
#define TFMSEP_BSSEVAL_HPP_

#include <cstddef>
#include <vector>

#include "tfmsep/audio.hpp"

namespace tfmsep {

// Orthogonal split of an estimate against time-invariant gains on the
// references: estimate = s_target + e_interf + e_artif, where s_target is
// the projection onto the chosen reference, s_target + e_interf the
// projection onto the span of all references, and e_artif the remainder.
struct Decomposition {
  std::vector<double> s_target;
  std::vector<double> e_interf;
  std::vector<double> e_artif;
};

// Energy ratios in decibels. A ratio with zero denominator energy is
// +infinity; zero numerator over nonzero denominator is -infinity. A
// component's energy counts as zero when it is at most 1e-20 times the
// estimate's energy, which separates exact-zero components (held above
// the roundoff floor of the projection arithmetic) from genuinely small
// ones. 0/0 raises NumericError: the ratio is undefined.
struct SourceMetrics {
  double sdr_db = 0.0;  // ||s_target||^2 / ||e_interf + e_artif||^2
  double sir_db = 0.0;  // ||s_target||^2 / ||e_interf||^2
  double sar_db = 0.0;  // ||s_target + e_interf||^2 / ||e_artif||^2
};

// Projects an estimate against the references, target_index choosing
// which reference counts as wanted signal. References must be nonempty,
// of equal length and sample rate (matching the estimate), and linearly
// independent; target_index must be in range.
Decomposition decompose(const AudioSignal& estimate, std::size_t target_index,
                        const std::vector<AudioSignal>& references);

// Ratios of a decomposition, in dB.
SourceMetrics ratios(const Decomposition& d);

struct BssEvalResult {
  // per_source[i] scores estimate i against its assigned reference.
  std::vector<SourceMetrics> per_source;
  // assignment[i] is the reference index given to estimate i.
  std::vector<std::size_t> assignment;
};

// Scores every estimate, pairing estimates to references by the
// permutation with the highest mean SIR (separation methods do not fix
// the output order). Needs as many estimates as references.
BssEvalResult evaluate(const std::vector<AudioSignal>& estimates,
                       const std::vector<AudioSignal>& references);

}  // namespace tfmsep

#endif  // TFMSEP_BSSEVAL_HPP_
