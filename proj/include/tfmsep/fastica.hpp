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

#ifndef TFMSEP_FASTICA_HPP_
#define TFMSEP_FASTICA_HPP_

#include <cstdint>
#include <utility>

#include "tfmsep/types.hpp"

namespace tfmsep {

// Nonlinearity used in the fixed-point update.
enum class IcaContrast {
  kKurtosis,   // g(u) = u^3
  kNegentropy, // g(u) = tanh(u)
};

// Centering and whitening learned from data: z = matrix * (x - mean).
struct Whitening {
  RealVector mean;
  RealMatrix matrix;
};

// A fitted unmixing: sources = rotation * whitening * (x - mean).
struct IcaModel {
  Whitening whitening;
  RealMatrix rotation;  // orthonormal rows in whitened space
  IcaContrast contrast = IcaContrast::kNegentropy;
  int iterations_used = 0;
  bool converged = false;
};

// Removes the row means and decorrelates via the eigendecomposition of
// the sample covariance (normalized by n-1), so the result has identity
// covariance. X is channels x samples and needs more samples than
// channels; a rank-deficient covariance (e.g. duplicated rows) raises
// DataError.
std::pair<RealMatrix, Whitening> center_whiten(const RealMatrix& x);

// Fixed-point estimation of an orthonormal rotation on whitened data z
// (channels x samples). All rows are updated in parallel,
//   w <- E[z g(w.z)] - E[g'(w.z)] w,
// then re-orthonormalized symmetrically via W <- (W W^T)^(-1/2) W, until
// every row satisfies 1 - |<w_new, w_old>| < tol or max_iter rounds pass.
// Hitting max_iter is reported through converged = false, not an error.
// The initial rotation is seeded, so equal inputs give equal results.
IcaModel fastica_fit(const RealMatrix& z, const Whitening& whitening,
                     IcaContrast contrast, double tol = 1e-6,
                     int max_iter = 200, std::uint64_t seed = 0);

// Applies a fitted model to raw data: rotation * whitening * (x - mean).
// Row count of x must match the fitted channel count.
RealMatrix ica_separate(const RealMatrix& x, const IcaModel& model);

}  // namespace tfmsep

#endif  // TFMSEP_FASTICA_HPP_
