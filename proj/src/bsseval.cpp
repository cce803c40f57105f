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

#include "tfmsep/bsseval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "tfmsep/errors.hpp"
#include "tfmsep/types.hpp"

namespace tfmsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Energy this far below the estimate's own energy is indistinguishable
// from the roundoff left behind by the projection arithmetic (whose
// relative residuals are ~1e-16, i.e. ~1e-32 in energy); such a component
// counts as exactly zero.
constexpr double kZeroEnergyRel = 1e-20;

double energy(const std::vector<double>& v) {
  double acc = 0.0;
  for (double s : v) acc += s * s;
  return acc;
}

// 10*log10(num/den) with the zero cases resolved against the scale of the
// whole estimate. NumericError on 0/0: no ratio is defined there.
double ratio_db(double num, double den, double scale, const char* what) {
  const double floor = kZeroEnergyRel * scale;
  const bool num_zero = num <= floor;
  const bool den_zero = den <= floor;
  if (num_zero && den_zero) {
    throw NumericError(std::string("bsseval: ") + what +
                       " is 0/0; the metric is undefined for this input");
  }
  if (den_zero) return kInf;
  if (num_zero) return -kInf;
  return 10.0 * std::log10(num / den);
}

}  // namespace

Decomposition decompose(const AudioSignal& estimate, std::size_t target_index,
                        const std::vector<AudioSignal>& references) {
  if (references.empty()) {
    throw DataError("bsseval: no references");
  }
  if (target_index >= references.size()) {
    throw ParamError("bsseval: target index " + std::to_string(target_index) +
                     " out of range for " + std::to_string(references.size()) +
                     " references");
  }
  const std::size_t n = estimate.size();
  if (n == 0) {
    throw DataError("bsseval: empty estimate");
  }
  for (const AudioSignal& r : references) {
    if (r.size() != n) {
      throw DataError("bsseval: reference length " + std::to_string(r.size()) +
                      " does not match estimate length " + std::to_string(n));
    }
    if (r.sample_rate_hz != estimate.sample_rate_hz) {
      throw DataError("bsseval: sample rates differ between estimate and "
                      "reference");
    }
  }

  const std::size_t m = references.size();
  Eigen::Map<const RealVector> e(estimate.samples.data(),
                                 static_cast<Index>(n));
  RealMatrix refs(static_cast<Index>(n), static_cast<Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    refs.col(static_cast<Index>(j)) = Eigen::Map<const RealVector>(
        references[j].samples.data(), static_cast<Index>(n));
  }

  // Projection coefficients onto the span of all references: solve the
  // Gram system G c = R^T e.
  const RealMatrix gram = refs.transpose() * refs;
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw NumericError("bsseval: Gram eigendecomposition failed");
  }
  if (eig.eigenvalues().minCoeff() <=
      1e-12 * std::max(eig.eigenvalues().maxCoeff(), 0.0)) {
    throw DataError(
        "bsseval: references are linearly dependent (or zero); the "
        "projection is not unique");
  }
  const RealVector coeffs = eig.eigenvectors() *
                            (eig.eigenvectors().transpose() *
                             (refs.transpose() * e))
                                .cwiseQuotient(eig.eigenvalues());

  const Index ti = static_cast<Index>(target_index);
  const RealVector target_ref = refs.col(ti);
  const double target_energy = target_ref.squaredNorm();
  // References were checked nonzero through the Gram rank above.
  const double target_coeff = target_ref.dot(e) / target_energy;

  const RealVector s_target = target_coeff * target_ref;
  const RealVector p_all = refs * coeffs;
  const RealVector e_interf = p_all - s_target;
  const RealVector e_artif = e - p_all;

  Decomposition d;
  d.s_target.assign(s_target.data(), s_target.data() + n);
  d.e_interf.assign(e_interf.data(), e_interf.data() + n);
  d.e_artif.assign(e_artif.data(), e_artif.data() + n);
  return d;
}

SourceMetrics ratios(const Decomposition& d) {
  const std::size_t n = d.s_target.size();
  if (n == 0 || d.e_interf.size() != n || d.e_artif.size() != n) {
    throw DataError("bsseval: decomposition parts are empty or mismatched");
  }
  const double e_target = energy(d.s_target);
  const double e_interf = energy(d.e_interf);
  const double e_artif = energy(d.e_artif);

  // Distortion = everything that is not wanted signal. The parts are
  // orthogonal, so energies add.
  const double e_dist = e_interf + e_artif;
  const double scale = e_target + e_dist;  // estimate's own energy

  SourceMetrics out;
  out.sdr_db = ratio_db(e_target, e_dist, scale, "SDR");
  out.sir_db = ratio_db(e_target, e_interf, scale, "SIR");
  out.sar_db = ratio_db(e_target + e_interf, e_artif, scale, "SAR");
  return out;
}

BssEvalResult evaluate(const std::vector<AudioSignal>& estimates,
                       const std::vector<AudioSignal>& references) {
  if (estimates.empty() || references.empty()) {
    throw DataError("bsseval: need at least one estimate and one reference");
  }
  if (estimates.size() != references.size()) {
    throw DataError("bsseval: " + std::to_string(estimates.size()) +
                    " estimates vs " + std::to_string(references.size()) +
                    " references; counts must match");
  }

  const std::size_t m = estimates.size();
  // metrics[i][j]: estimate i decomposed with reference j as target.
  std::vector<std::vector<SourceMetrics>> metrics(m);
  for (std::size_t i = 0; i < m; ++i) {
    metrics[i].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      metrics[i].push_back(ratios(decompose(estimates[i], j, references)));
    }
  }

  // Choose the assignment with the highest mean SIR over all estimates.
  // Infinite SIRs participate naturally; a NaN mean (opposing infinities)
  // never beats anything.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  double best_mean = -kInf;
  bool have_best = false;
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += metrics[i][perm[i]].sir_db;
    const double mean = sum / static_cast<double>(m);
    if (!std::isnan(mean) && (!have_best || mean > best_mean)) {
      best_mean = mean;
      best = perm;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  BssEvalResult result;
  result.assignment = best;
  result.per_source.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    result.per_source.push_back(metrics[i][best[i]]);
  }
  return result;
}

}  // namespace tfmsep
