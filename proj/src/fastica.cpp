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

#include "tfmsep/fastica.hpp"

#include <cmath>
#include <random>
#include <string>

#include "tfmsep/errors.hpp"

namespace tfmsep {

namespace {

// Relative eigenvalue floor below which the covariance counts as
// rank-deficient: whitening would divide by (nearly) zero.
constexpr double kRankTol = 1e-12;

// W <- (W W^T)^(-1/2) W via the eigendecomposition of the symmetric
// positive definite W W^T. Afterwards W W^T == I.
RealMatrix symmetric_orthonormalize(const RealMatrix& w) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(w * w.transpose());
  if (eig.info() != Eigen::Success) {
    throw NumericError("fastica: eigendecomposition failed");
  }
  const RealVector& vals = eig.eigenvalues();
  if (vals.minCoeff() <= 0.0 ||
      vals.minCoeff() < kRankTol * vals.maxCoeff()) {
    throw NumericError(
        "fastica: rotation became singular during orthonormalization");
  }
  const RealMatrix inv_sqrt =
      eig.eigenvectors() *
      vals.array().rsqrt().matrix().asDiagonal() *
      eig.eigenvectors().transpose();
  return inv_sqrt * w;
}

}  // namespace

std::pair<RealMatrix, Whitening> center_whiten(const RealMatrix& x) {
  const Index channels = x.rows();
  const Index samples = x.cols();
  if (channels < 1) {
    throw DataError("whiten: no channels");
  }
  if (samples <= channels) {
    throw DataError("whiten: need more samples (" + std::to_string(samples) +
                    ") than channels (" + std::to_string(channels) + ")");
  }
  if (!x.allFinite()) {
    throw NumericError("whiten: non-finite input");
  }

  Whitening wh;
  wh.mean = x.rowwise().mean();
  RealMatrix centered = x.colwise() - wh.mean;

  // Sample covariance with the n-1 normalization, matching the unit
  // variance convention used everywhere else in this module.
  const RealMatrix cov =
      centered * centered.transpose() / static_cast<double>(samples - 1);
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw NumericError("whiten: eigendecomposition failed");
  }
  const RealVector& vals = eig.eigenvalues();
  if (vals.minCoeff() <= 0.0 ||
      vals.minCoeff() < kRankTol * vals.maxCoeff()) {
    throw DataError(
        "whiten: covariance is rank-deficient (linearly dependent "
        "channels); cannot whiten");
  }
  wh.matrix = vals.array().rsqrt().matrix().asDiagonal() *
              eig.eigenvectors().transpose();
  return {wh.matrix * centered, wh};
}

IcaModel fastica_fit(const RealMatrix& z, const Whitening& whitening,
                     IcaContrast contrast, double tol, int max_iter,
                     std::uint64_t seed) {
  const Index channels = z.rows();
  const Index samples = z.cols();
  if (channels < 1 || samples <= channels) {
    throw DataError("fastica: need more samples than channels");
  }
  if (whitening.matrix.rows() != channels ||
      whitening.mean.size() != channels) {
    throw DataError("fastica: whitening does not match the data's channels");
  }
  if (!(tol > 0.0)) {
    throw ParamError("fastica: tol must be positive");
  }
  if (max_iter < 1) {
    throw ParamError("fastica: max_iter must be at least 1");
  }

  IcaModel model;
  model.whitening = whitening;
  model.contrast = contrast;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix w(channels, channels);
  for (Index r = 0; r < channels; ++r) {
    for (Index c = 0; c < channels; ++c) {
      w(r, c) = gauss(rng);
    }
  }
  w = symmetric_orthonormalize(w);

  const double inv_n = 1.0 / static_cast<double>(samples);
  for (int iter = 1; iter <= max_iter; ++iter) {
    const RealMatrix y = w * z;  // channels x samples, row i = w_i . z

    RealMatrix g;       // g(y)
    RealVector g_mean;  // E[g'(y)] per row
    if (contrast == IcaContrast::kKurtosis) {
      g = y.array().cube().matrix();
      g_mean = (3.0 * y.array().square()).rowwise().mean().matrix();
    } else {
      g = y.array().tanh().matrix();
      g_mean = (1.0 - g.array().square()).rowwise().mean().matrix();
    }

    // w_i <- E[z g(w_i . z)] - E[g'(w_i . z)] w_i, all rows at once.
    RealMatrix w_new =
        (g * z.transpose()) * inv_n - g_mean.asDiagonal() * w;
    w_new = symmetric_orthonormalize(w_new);

    // Row directions settle up to sign; compare via |<new, old>|.
    double worst = 0.0;
    for (Index r = 0; r < channels; ++r) {
      const double align = std::abs(w_new.row(r).dot(w.row(r)));
      worst = std::max(worst, 1.0 - align);
    }
    w = std::move(w_new);
    if (worst < tol) {
      model.converged = true;
      model.iterations_used = iter;
      break;
    }
    model.iterations_used = iter;
  }
  model.rotation = std::move(w);
  return model;
}

RealMatrix ica_separate(const RealMatrix& x, const IcaModel& model) {
  if (x.rows() != model.whitening.mean.size()) {
    throw DataError("ica_separate: data has " + std::to_string(x.rows()) +
                    " channels, the model was fitted on " +
                    std::to_string(model.whitening.mean.size()));
  }
  if (x.cols() == 0) {
    throw DataError("ica_separate: no samples");
  }
  return model.rotation * model.whitening.matrix *
         (x.colwise() - model.whitening.mean);
}

}  // namespace tfmsep
