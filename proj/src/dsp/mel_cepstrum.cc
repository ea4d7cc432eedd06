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

#include "glotwave/dsp/mel_cepstrum.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glotwave/errors.h"

namespace glotwave::dsp {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<std::vector<double>> MelFilterbank(int num_bins, int fft_size,
                                               int fs, int n_mels) {
  if (num_bins != fft_size / 2 + 1) {
    throw ValidationError("spectrum has " + std::to_string(num_bins) +
                          " bins, fft_size " + std::to_string(fft_size) +
                          " implies " + std::to_string(fft_size / 2 + 1));
  }
  if (n_mels < 1 || fs <= 0) throw ConfigError("invalid mel filterbank setup");
  const double mel_hi = HzToMel(fs / 2.0);
  std::vector<std::vector<double>> weights(n_mels, std::vector<double>(num_bins, 0.0));
  for (int b = 0; b < n_mels; ++b) {
    const double left = mel_hi * b / (n_mels + 1);
    const double center = mel_hi * (b + 1) / (n_mels + 1);
    const double right = mel_hi * (b + 2) / (n_mels + 1);
    double sum = 0.0;
    for (int k = 0; k < num_bins; ++k) {
      const double mel = HzToMel(static_cast<double>(k) * fs / fft_size);
      double v = 0.0;
      if (mel > left && mel <= center) {
        v = (mel - left) / (center - left);
      } else if (mel > center && mel < right) {
        v = (right - mel) / (right - center);
      }
      weights[b][k] = v;
      sum += v;
    }
    if (sum <= 0.0) {
      throw ConfigError("mel band " + std::to_string(b) +
                        " contains no FFT bins; reduce n_mels or raise fft_size");
    }
    for (double& v : weights[b]) v /= sum;
  }
  return weights;
}

std::vector<double> MelCepstrum(std::span<const double> log_mag, int fft_size,
                                int fs, int n_mels, int order) {
  if (!(order >= 1 && n_mels > order)) {
    throw ConfigError("mel cepstrum needs n_mels > order >= 1");
  }
  const auto weights =
      MelFilterbank(static_cast<int>(log_mag.size()), fft_size, fs, n_mels);
  std::vector<double> log_energy(n_mels);
  for (int b = 0; b < n_mels; ++b) {
    double e = 0.0;
    for (size_t k = 0; k < log_mag.size(); ++k) {
      e += weights[b][k] * std::exp(2.0 * log_mag[k]);
    }
    log_energy[b] = std::log(std::max(e, 1e-300));
  }
  std::vector<double> c(order + 1);
  for (int q = 0; q <= order; ++q) {
    const double scale = q == 0 ? std::sqrt(1.0 / n_mels) : std::sqrt(2.0 / n_mels);
    double acc = 0.0;
    for (int b = 0; b < n_mels; ++b) {
      acc += log_energy[b] * std::cos(std::numbers::pi * q * (b + 0.5) / n_mels);
    }
    c[q] = scale * acc;
  }
  return c;
}

}  // namespace glotwave::dsp
