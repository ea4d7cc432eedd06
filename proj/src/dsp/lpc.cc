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

#include "glotwave/dsp/lpc.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"

namespace glotwave::dsp {

std::vector<double> Autocorrelation(std::span<const double> x, int order) {
  std::vector<double> r(order + 1, 0.0);
  const auto n = static_cast<int>(x.size());
  for (int lag = 0; lag <= order && lag < n; ++lag) {
    double sum = 0.0;
    for (int i = lag; i < n; ++i) sum += x[i] * x[i - lag];
    r[lag] = sum;
  }
  return r;
}

LpcModel LpcFromAutocorr(std::span<const double> r) {
  if (r.empty()) throw ValidationError("autocorrelation sequence is empty");
  if (!(r[0] > 0.0)) {
    throw ValidationError("autocorrelation r[0] must be positive, got " +
                          std::to_string(r[0]));
  }
  LpcModel m;
  m.order = static_cast<int>(r.size()) - 1;
  m.a.assign(m.order + 1, 0.0);
  m.a[0] = 1.0;
  std::vector<double> prev(m.order + 1, 0.0);
  double error = r[0];
  for (int i = 1; i <= m.order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += m.a[j] * r[i - j];
    double k = -acc / error;
    if (!std::isfinite(k) || std::abs(k) >= 1.0) {
      k = std::isfinite(k) && k < 0 ? -kMaxReflection : kMaxReflection;
      m.clamped = true;
    }
    prev = m.a;
    for (int j = 1; j < i; ++j) m.a[j] = prev[j] + k * prev[i - j];
    m.a[i] = k;
    error *= 1.0 - k * k;
  }
  m.gain = std::sqrt(std::max(error, 0.0));
  return m;
}

std::vector<double> InverseFilter(std::span<const double> x,
                                  std::span<const double> a) {
  std::vector<double> e(x.size(), 0.0);
  for (size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    const size_t taps = std::min(a.size(), n + 1);
    for (size_t i = 0; i < taps; ++i) acc += a[i] * x[n - i];
    e[n] = acc;
  }
  return e;
}

std::vector<double> LpcResidual(const Waveform& w,
                                const LpcResidualOptions& options) {
  const int order = options.order > 0 ? options.order : w.fs / 1000 + 2;
  if (!(options.shift_s > 0) || !(options.frame_s > options.shift_s)) {
    throw ConfigError("LPC residual needs frame_s > shift_s > 0");
  }
  const int frame = static_cast<int>(std::lround(options.frame_s * w.fs));
  const int shift = static_cast<int>(std::lround(options.shift_s * w.fs));
  const auto n = static_cast<int>(w.samples.size());
  if (n < frame) {
    throw ValidationError("waveform of " + std::to_string(n) +
                          " samples is shorter than one LPC frame (" +
                          std::to_string(frame) + ")");
  }
  const int num_frames = 1 + (n - frame) / shift;
  const std::vector<double> window = Hann(frame);

  std::vector<std::vector<double>> coeffs(num_frames);
  std::vector<double> buf(frame);
  for (int f = 0; f < num_frames; ++f) {
    const int start = f * shift;
    for (int i = 0; i < frame; ++i) buf[i] = w.samples[start + i] * window[i];
    const auto r = Autocorrelation(buf, order);
    if (r[0] > 0.0) {
      coeffs[f] = LpcFromAutocorr(r).a;
    } else {
      coeffs[f].assign(order + 1, 0.0);
      coeffs[f][0] = 1.0;
    }
  }

  // Between the centers of frames f and f + 1 the filter taps are linearly
  // interpolated, which equals cross-fading the two filters' outputs.
  std::vector<double> residual(n, 0.0);
  std::vector<double> taps(order + 1);
  const double half = frame / 2.0;
  for (int t = 0; t < n; ++t) {
    const double pos = (t - half) / shift;
    int f = static_cast<int>(std::floor(pos));
    double alpha = pos - f;
    if (f < 0) {
      f = 0;
      alpha = 0.0;
    } else if (f >= num_frames - 1) {
      f = num_frames - 1;
      alpha = 0.0;
    }
    const auto& a0 = coeffs[f];
    const auto& a1 = coeffs[std::min(f + 1, num_frames - 1)];
    double acc = 0.0;
    for (int i = 0; i <= order && i <= t; ++i) {
      acc += ((1.0 - alpha) * a0[i] + alpha * a1[i]) * w.samples[t - i];
    }
    residual[t] = acc;
  }
  return residual;
}

std::vector<double> LpcEnvelope(const LpcModel& m, int num_bins, int fft_size) {
  if (m.a.empty() || m.a[0] != 1.0) {
    throw ValidationError("LPC model must have a[0] = 1");
  }
  if (num_bins < 1 || fft_size < 1) {
    throw ValidationError("LPC envelope needs positive bin count and fft size");
  }
  constexpr double kFloor = 1e-12;
  const double log_gain = std::log(std::max(m.gain, kFloor));
  std::vector<double> env(num_bins);
  for (int k = 0; k < num_bins; ++k) {
    const double omega = 2.0 * std::numbers::pi * k / fft_size;
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < m.a.size(); ++i) {
      acc += m.a[i] * std::polar(1.0, -omega * static_cast<double>(i));
    }
    env[k] = log_gain - std::log(std::max(std::abs(acc), kFloor));
  }
  return env;
}

}  // namespace glotwave::dsp
