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

#ifndef GLOTWAVE_DSP_LPC_H_
#define GLOTWAVE_DSP_LPC_H_

#include <span>
#include <vector>

#include "glotwave/signal_io.h"

namespace glotwave::dsp {

// Predictor polynomial A(z) = sum_i a[i] z^-i with a[0] = 1, plus the
// residual gain G (square root of the prediction error power).
struct LpcModel {
  int order = 0;
  std::vector<double> a;
  double gain = 1.0;
  // Set when Levinson-Durbin hit |k| >= 1 and a reflection coefficient had
  // to be clamped to keep the model minimum phase.
  bool clamped = false;
};

inline constexpr double kMaxReflection = 0.999;

// Autocorrelation lags r[0..order] of `x` (no normalization).
std::vector<double> Autocorrelation(std::span<const double> x, int order);

// Levinson-Durbin solution of the Yule-Walker equations. order = r.size() - 1.
LpcModel LpcFromAutocorr(std::span<const double> r);

// FIR inverse filter e[n] = sum_i a[i] x[n - i], with x[n < 0] = 0.
std::vector<double> InverseFilter(std::span<const double> x,
                                  std::span<const double> a);

struct LpcResidualOptions {
  int order = 0;          // 0 selects fs / 1000 + 2
  double frame_s = 0.025;
  double shift_s = 0.005;
};

// Frame-wise LPC residual. Each frame's model comes from a Hann-windowed
// autocorrelation; the unwindowed signal is inverse filtered and adjacent
// frames' outputs are cross-faded linearly between frame centers.
std::vector<double> LpcResidual(const Waveform& w,
                                const LpcResidualOptions& options = {});

// log_mag[k] = log(gain) - log|A(exp(j 2 pi k / fft_size))|, k < num_bins.
std::vector<double> LpcEnvelope(const LpcModel& m, int num_bins, int fft_size);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_LPC_H_
