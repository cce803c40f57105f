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
#include <cstdint>
#include <random>

#include "tfmsep/errors.hpp"
#include "tfmsep/fastica.hpp"

using tfmsep::DataError;
using tfmsep::IcaContrast;
using tfmsep::IcaModel;
using tfmsep::Index;
using tfmsep::RealMatrix;
using tfmsep::Whitening;

namespace {

// Two independent zero-mean unit-variance rows with sub-gaussian
// (uniform) or super-gaussian (Laplacian) marginals.
RealMatrix independent_sources(Index n, std::uint64_t seed, bool uniform) {
  std::mt19937_64 rng(seed);
  RealMatrix s(2, n);
  if (uniform) {
    const double half = std::sqrt(3.0);  // U(-sqrt(3), sqrt(3)) has var 1
    std::uniform_real_distribution<double> dist(-half, half);
    for (Index r = 0; r < 2; ++r) {
      for (Index c = 0; c < n; ++c) s(r, c) = dist(rng);
    }
  } else {
    // Difference of two exponentials is Laplacian; scale 1/sqrt(2) gives
    // unit variance.
    std::exponential_distribution<double> expo(1.0);
    for (Index r = 0; r < 2; ++r) {
      for (Index c = 0; c < n; ++c) {
        s(r, c) = (expo(rng) - expo(rng)) / std::sqrt(2.0);
      }
    }
  }
  return s;
}

// Sample covariance with the same n-1 convention the library documents,
// recomputed with plain loops.
RealMatrix sample_cov(const RealMatrix& x) {
  const Index ch = x.rows(), n = x.cols();
  RealMatrix cov = RealMatrix::Zero(ch, ch);
  std::vector<double> mean(ch, 0.0);
  for (Index r = 0; r < ch; ++r) {
    for (Index c = 0; c < n; ++c) mean[r] += x(r, c);
    mean[r] /= static_cast<double>(n);
  }
  for (Index i = 0; i < ch; ++i) {
    for (Index j = 0; j < ch; ++j) {
      double acc = 0.0;
      for (Index c = 0; c < n; ++c) {
        acc += (x(i, c) - mean[i]) * (x(j, c) - mean[j]);
      }
      cov(i, j) = acc / static_cast<double>(n - 1);
    }
  }
  return cov;
}

double abs_correlation(const RealMatrix& a, Index ra, const RealMatrix& b,
                       Index rb) {
  const Index n = a.cols();
  double ma = 0.0, mb = 0.0;
  for (Index c = 0; c < n; ++c) {
    ma += a(ra, c);
    mb += b(rb, c);
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double num = 0.0, da = 0.0, db = 0.0;
  for (Index c = 0; c < n; ++c) {
    const double xa = a(ra, c) - ma, xb = b(rb, c) - mb;
    num += xa * xb;
    da += xa * xa;
    db += xb * xb;
  }
  return std::abs(num) / std::sqrt(da * db);
}

// Best |correlation| match between recovered rows and true sources over
// the two possible assignments.
double worst_match(const RealMatrix& recovered, const RealMatrix& truth) {
  const double straight = std::min(abs_correlation(recovered, 0, truth, 0),
                                   abs_correlation(recovered, 1, truth, 1));
  const double crossed = std::min(abs_correlation(recovered, 0, truth, 1),
                                  abs_correlation(recovered, 1, truth, 0));
  return std::max(straight, crossed);
}

RealMatrix mix_sources(const RealMatrix& s) {
  RealMatrix a(2, 2);
  a << 1.0, 1.0, 0.6, 1.4;
  return a * s;
}

}  // namespace

TEST_CASE("center_whiten produces identity covariance and zero mean") {
  const RealMatrix s = independent_sources(10000, 5, true);
  const RealMatrix x = mix_sources(s);
  const auto [z, wh] = tfmsep::center_whiten(x);
  REQUIRE(z.rows() == 2);
  REQUIRE(z.cols() == 10000);

  const RealMatrix cov = sample_cov(z);
  CHECK(std::abs(cov(0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(cov(1, 1) - 1.0) < 1e-10);
  CHECK(std::abs(cov(0, 1)) < 1e-10);
  CHECK(std::abs(z.row(0).mean()) < 1e-10);
  CHECK(std::abs(z.row(1).mean()) < 1e-10);

  // The stored transform regenerates z from raw data.
  const RealMatrix replay = wh.matrix * (x.colwise() - wh.mean);
  CHECK((replay - z).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("center_whiten rejects rank-deficient input") {
  RealMatrix x(2, 100);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Index c = 0; c < 100; ++c) {
    x(0, c) = dist(rng);
    x(1, c) = 2.0 * x(0, c);  // exact linear dependence
  }
  CHECK_THROWS_AS(tfmsep::center_whiten(x), DataError);

  RealMatrix thin(3, 2);  // not more samples than channels
  thin.setRandom();
  CHECK_THROWS_AS(tfmsep::center_whiten(thin), DataError);
}

TEST_CASE("whitening already-white data is an orthogonal map") {
  const RealMatrix s = independent_sources(20000, 7, true);
  const auto [z, wh] = tfmsep::center_whiten(s);
  // Inputs are independent unit-variance rows: whitening can only rotate
  // or reflect, so the matrix is close to orthogonal.
  const RealMatrix wwt = wh.matrix * wh.matrix.transpose();
  CHECK(std::abs(wwt(0, 0) - 1.0) < 0.05);
  CHECK(std::abs(wwt(1, 1) - 1.0) < 0.05);
  CHECK(std::abs(wwt(0, 1)) < 0.05);
  const RealMatrix cov = sample_cov(z);
  CHECK(std::abs(cov(0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(cov(0, 1)) < 1e-10);
}

TEST_CASE("kurtosis contrast unmixes uniform sources") {
  const RealMatrix s = independent_sources(20000, 11, true);
  const RealMatrix x = mix_sources(s);
  const auto [z, wh] = tfmsep::center_whiten(x);
  const IcaModel model =
      tfmsep::fastica_fit(z, wh, IcaContrast::kKurtosis, 1e-6, 200, 1);
  CHECK(model.converged);
  CHECK(model.iterations_used < 200);
  CHECK(model.contrast == IcaContrast::kKurtosis);

  const RealMatrix wwt = model.rotation * model.rotation.transpose();
  CHECK(std::abs(wwt(0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(wwt(1, 1) - 1.0) < 1e-8);
  CHECK(std::abs(wwt(0, 1)) < 1e-8);

  const RealMatrix recovered = tfmsep::ica_separate(x, model);
  CHECK(worst_match(recovered, s) > 0.95);
}

TEST_CASE("negentropy contrast unmixes laplacian sources") {
  const RealMatrix s = independent_sources(20000, 13, false);
  const RealMatrix x = mix_sources(s);
  const auto [z, wh] = tfmsep::center_whiten(x);
  const IcaModel model =
      tfmsep::fastica_fit(z, wh, IcaContrast::kNegentropy, 1e-6, 200, 2);
  CHECK(model.converged);
  CHECK(model.iterations_used < 200);

  const RealMatrix recovered = tfmsep::ica_separate(x, model);
  CHECK(worst_match(recovered, s) > 0.95);

  const RealMatrix cov = sample_cov(recovered);
  // Rotation of whitened data: rows stay decorrelated with unit variance.
  CHECK(std::abs(cov(0, 0) - 1.0) < 1e-6);
  CHECK(std::abs(cov(1, 1) - 1.0) < 1e-6);
  CHECK(std::abs(cov(0, 1)) < 1e-6);
}

TEST_CASE("fastica is deterministic for a fixed seed") {
  const RealMatrix s = independent_sources(8000, 17, true);
  const RealMatrix x = mix_sources(s);
  const auto [z, wh] = tfmsep::center_whiten(x);
  const IcaModel a =
      tfmsep::fastica_fit(z, wh, IcaContrast::kNegentropy, 1e-6, 200, 3);
  const IcaModel b =
      tfmsep::fastica_fit(z, wh, IcaContrast::kNegentropy, 1e-6, 200, 3);
  CHECK(a.rotation == b.rotation);  // bitwise
  CHECK(a.iterations_used == b.iterations_used);
}

TEST_CASE("separation is invariant to a common input scale") {
  const RealMatrix s = independent_sources(12000, 19, true);
  const RealMatrix x = mix_sources(s);

  const auto [z1, wh1] = tfmsep::center_whiten(x);
  const IcaModel m1 =
      tfmsep::fastica_fit(z1, wh1, IcaContrast::kKurtosis, 1e-6, 200, 4);
  const RealMatrix r1 = tfmsep::ica_separate(x, m1);

  const RealMatrix scaled = 37.5 * x;
  const auto [z2, wh2] = tfmsep::center_whiten(scaled);
  const IcaModel m2 =
      tfmsep::fastica_fit(z2, wh2, IcaContrast::kKurtosis, 1e-6, 200, 4);
  const RealMatrix r2 = tfmsep::ica_separate(scaled, m2);

  // Whitening absorbs the gain; the recovered rows agree up to
  // permutation and sign.
  CHECK(worst_match(r2, r1) > 0.999);
}

TEST_CASE("hitting the iteration cap reports non-convergence without throwing") {
  const RealMatrix s = independent_sources(4000, 23, true);
  const RealMatrix x = mix_sources(s);
  const auto [z, wh] = tfmsep::center_whiten(x);
  const IcaModel model =
      tfmsep::fastica_fit(z, wh, IcaContrast::kNegentropy, 1e-15, 1, 5);
  CHECK_FALSE(model.converged);
  CHECK(model.iterations_used == 1);
  // The rotation is still orthonormal; downstream code can proceed.
  const RealMatrix wwt = model.rotation * model.rotation.transpose();
  CHECK(std::abs(wwt(0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(wwt(0, 1)) < 1e-8);
}

TEST_CASE("fastica validates parameters and shapes") {
  const RealMatrix s = independent_sources(1000, 29, true);
  const auto [z, wh] = tfmsep::center_whiten(mix_sources(s));

  CHECK_THROWS_AS(
      tfmsep::fastica_fit(z, wh, IcaContrast::kKurtosis, 0.0, 200, 1),
      tfmsep::ParamError);
  CHECK_THROWS_AS(
      tfmsep::fastica_fit(z, wh, IcaContrast::kKurtosis, 1e-6, 0, 1),
      tfmsep::ParamError);

  IcaModel model = tfmsep::fastica_fit(z, wh, IcaContrast::kKurtosis);
  RealMatrix wrong(3, 50);
  wrong.setRandom();
  CHECK_THROWS_AS(tfmsep::ica_separate(wrong, model), DataError);
}
