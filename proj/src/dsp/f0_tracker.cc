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

#include "glotwave/dsp/f0_tracker.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "glotwave/errors.h"

namespace glotwave::dsp {
namespace {

// Among lags whose correlation is close to the best one, the shortest wins;
// this keeps period doubling from beating the true period.
constexpr double kOctaveTolerance = 0.9;

}  // namespace

F0Contour EstimateF0Autocorr(const Waveform& w, const F0TrackerOptions& options) {
  if (w.samples.empty()) throw ValidationError("cannot track F0 of an empty waveform");
  if (!(options.f0_min > 0 && options.f0_min < options.f0_max &&
        options.f0_max <= w.fs / 4.0)) {
    throw ConfigError("F0 tracker needs 0 < f0_min < f0_max <= fs/4");
  }
  const int n = static_cast<int>(w.samples.size());
  const int hop = std::max(1, static_cast<int>(std::lround(options.frame_shift_s * w.fs)));
  const int min_lag = static_cast<int>(std::floor(w.fs / options.f0_max));
  const int max_lag = static_cast<int>(std::ceil(w.fs / options.f0_min));
  const int half = std::max(static_cast<int>(std::lround(options.frame_s * w.fs / 2)),
                            max_lag);
  const int num_frames = (n - 1) / hop + 1;

  std::vector<double> energy(num_frames, 0.0);
  double loudest = 0.0;
  for (int j = 0; j < num_frames; ++j) {
    const int begin = std::max(0, j * hop - half);
    const int end = std::min(n, j * hop + half);
    for (int i = begin; i < end; ++i) energy[j] += w.samples[i] * w.samples[i];
    energy[j] /= std::max(1, end - begin);
    loudest = std::max(loudest, energy[j]);
  }
  const double energy_gate = loudest * std::pow(10.0, -options.silence_db / 10.0);

  std::vector<double> raw(num_frames, 0.0);
  std::vector<double> corr(max_lag + 2, 0.0);
  for (int j = 0; j < num_frames; ++j) {
    if (energy[j] < energy_gate) continue;
    const int begin = std::max(0, j * hop - half);
    const int end = std::min(n, j * hop + half);
    const int len = end - begin;
    if (len <= max_lag + 1) continue;
    const double* x = w.samples.data() + begin;
    // Correlate the first (len - max_lag) samples against lagged copies so
    // every lag uses the same number of products.
    const int span = len - max_lag - 1;
    double e0 = 0.0;
    for (int i = 0; i < span; ++i) e0 += x[i] * x[i];
    if (e0 <= 1e-12) continue;
    double best = -1.0;
    for (int lag = std::max(min_lag - 1, 1); lag <= max_lag + 1; ++lag) {
      double xy = 0.0, el = 0.0;
      for (int i = 0; i < span; ++i) {
        xy += x[i] * x[i + lag];
        el += x[i + lag] * x[i + lag];
      }
      corr[lag] = el > 0 ? xy / std::sqrt(e0 * el) : 0.0;
    }
    for (int lag = std::max(min_lag, 2); lag <= max_lag; ++lag) {
      if (corr[lag] > corr[lag - 1] && corr[lag] >= corr[lag + 1]) {
        best = std::max(best, corr[lag]);
      }
    }
    if (best < options.voicing_threshold) continue;
    int pick = -1;
    // Only interior maxima count; a maximum at the edge of the lag range is
    // a trend, not a period.
    for (int lag = std::max(min_lag, 2); lag <= max_lag; ++lag) {
      const bool peak = corr[lag] > corr[lag - 1] && corr[lag] >= corr[lag + 1];
      if (peak && corr[lag] >= kOctaveTolerance * best) {
        pick = lag;
        break;
      }
    }
    if (pick < 0) continue;
    // Parabolic refinement of the lag.
    double lag = pick;
    if (pick > min_lag && pick < max_lag + 1) {
      const double a = corr[pick - 1], b = corr[pick], c = corr[pick + 1];
      const double denom = a - 2 * b + c;
      if (denom < 0) lag += 0.5 * (a - c) / denom;
    }
    const double f0 = w.fs / lag;
    if (f0 >= options.f0_min && f0 <= options.f0_max) raw[j] = f0;
  }

  F0Contour out;
  out.frame_shift_s = static_cast<double>(hop) / w.fs;
  out.values.resize(num_frames);
  for (int j = 0; j < num_frames; ++j) {
    double window[3] = {raw[std::max(j - 1, 0)], raw[j],
                        raw[std::min(j + 1, num_frames - 1)]};
    std::sort(window, window + 3);
    out.values[j] = window[1];
  }
  return out;
}

}  // namespace glotwave::dsp
