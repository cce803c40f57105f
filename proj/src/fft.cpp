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

#include "tfmsep/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "tfmsep/errors.hpp"

namespace tfmsep {

namespace {
// The FFTW planner mutates global state; plan creation and destruction
// must be serialized. Executing existing plans is safe without the lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) {
    throw ParamError("fft: transform length must be at least 1");
  }
  impl_->real = fftw_alloc_real(n);
  impl_->cplx = fftw_alloc_complex(n / 2 + 1);
  if (impl_->real == nullptr || impl_->cplx == nullptr) {
    throw std::bad_alloc();
  }
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE picks the plan by heuristic instead of measurement, so
  // planning is deterministic and does not depend on machine load.
  impl_->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), impl_->real,
                                    impl_->cplx, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), impl_->cplx,
                                    impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->fwd != nullptr) fftw_destroy_plan(impl_->fwd);
  if (impl_->inv != nullptr) fftw_destroy_plan(impl_->inv);
  fftw_free(impl_->real);
  fftw_free(impl_->cplx);
}

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::copy(in, in + n_, impl_->real);
  fftw_execute(impl_->fwd);
  const std::size_t nb = bins();
  for (std::size_t k = 0; k < nb; ++k) {
    out[k] = std::complex<double>(impl_->cplx[k][0], impl_->cplx[k][1]);
  }
}

void RealFft::inverse(const std::complex<double>* in, double* out) {
  const std::size_t nb = bins();
  for (std::size_t k = 0; k < nb; ++k) {
    impl_->cplx[k][0] = in[k].real();
    impl_->cplx[k][1] = in[k].imag();
  }
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t t = 0; t < n_; ++t) {
    out[t] = impl_->real[t] * scale;
  }
}

}  // namespace tfmsep
