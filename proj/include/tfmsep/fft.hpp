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

#ifndef TFMSEP_FFT_HPP_
#define TFMSEP_FFT_HPP_

#include <complex>
#include <cstddef>
#include <memory>

namespace tfmsep {

// Real-input FFT of a fixed length, backed by FFTW with deterministic
// (FFTW_ESTIMATE) planning. One instance owns its plans and scratch
// buffers; a single instance must not be used from two threads at once,
// but distinct instances are independent.
class RealFft {
 public:
  // Plans forward and inverse transforms of length n. n must be >= 1.
  explicit RealFft(std::size_t n);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  // out[k] = sum_t in[t] * exp(-2*pi*i*k*t/n) for k in [0, n/2].
  // Unnormalized; out must hold bins() values.
  void forward(const double* in, std::complex<double>* out);

  // Inverse of forward including the 1/n normalization, so
  // inverse(forward(x)) == x up to rounding. out must hold n values.
  void inverse(const std::complex<double>* in, double* out);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tfmsep

#endif  // TFMSEP_FFT_HPP_
