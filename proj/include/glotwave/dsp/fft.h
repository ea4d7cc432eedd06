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

#ifndef GLOTWAVE_DSP_FFT_H_
#define GLOTWAVE_DSP_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace glotwave::dsp {

bool IsPowerOfTwo(int n);

// Real-input DFT of a power-of-two size, backed by FFTW. Plans are created
// once per size and shared; Forward/Inverse are safe to call concurrently.
class RealFft {
 public:
  explicit RealFft(int size);

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  // X_k = sum_n x[n] exp(-2 pi i k n / N), k = 0..N/2.
  std::vector<std::complex<double>> Forward(std::span<const double> input) const;

  // Inverse of Forward including the 1/N factor. The imaginary parts of the
  // DC and Nyquist bins are ignored (hermitian completion).
  std::vector<double> Inverse(std::span<const std::complex<double>> bins) const;

 private:
  int size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_FFT_H_
