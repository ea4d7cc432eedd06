// Copyright 2026 The Glotwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glotwave/dsp/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "glotwave/errors.h"

namespace glotwave::dsp {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// The FFTW planner is not reentrant; execution with the new-array interface
// is. Plans live for the lifetime of the process.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

template <typename T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <typename T>
FftwBuffer<T> Allocate(size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

PlanPair GetPlans(int n) {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  static std::map<int, PlanPair> plans;
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  auto real = Allocate<double>(n);
  auto cplx = Allocate<fftw_complex>(n / 2 + 1);
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(n, real.get(), cplx.get(), FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(n, cplx.get(), real.get(), FFTW_ESTIMATE);
  plans.emplace(n, p);
  return p;
}

}  // namespace

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

RealFft::RealFft(int size) : size_(size) {
  if (!IsPowerOfTwo(size) || size < 2) {
    throw ConfigError("FFT size must be a power of two >= 2, got " +
                      std::to_string(size));
  }
  const PlanPair p = GetPlans(size);
  forward_plan_ = p.forward;
  inverse_plan_ = p.inverse;
}

std::vector<std::complex<double>> RealFft::Forward(
    std::span<const double> input) const {
  if (static_cast<int>(input.size()) != size_) {
    throw ValidationError("FFT input length " + std::to_string(input.size()) +
                          " != size " + std::to_string(size_));
  }
  auto real = Allocate<double>(size_);
  auto cplx = Allocate<fftw_complex>(num_bins());
  std::copy(input.begin(), input.end(), real.get());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), real.get(),
                       cplx.get());
  std::vector<std::complex<double>> out(num_bins());
  for (int k = 0; k < num_bins(); ++k) out[k] = {cplx[k][0], cplx[k][1]};
  return out;
}

std::vector<double> RealFft::Inverse(
    std::span<const std::complex<double>> bins) const {
  if (static_cast<int>(bins.size()) != num_bins()) {
    throw ValidationError("inverse FFT expects " + std::to_string(num_bins()) +
                          " bins, got " + std::to_string(bins.size()));
  }
  auto real = Allocate<double>(size_);
  auto cplx = Allocate<fftw_complex>(num_bins());
  for (int k = 0; k < num_bins(); ++k) {
    cplx[k][0] = bins[k].real();
    cplx[k][1] = bins[k].imag();
  }
  cplx[0][1] = 0.0;
  cplx[num_bins() - 1][1] = 0.0;
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), cplx.get(),
                       real.get());
  std::vector<double> out(real.get(), real.get() + size_);
  const double scale = 1.0 / size_;
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace glotwave::dsp
