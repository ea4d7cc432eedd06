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

#include "glotwave/dsp/spectrum.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "glotwave/dsp/fft.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/errors.h"

namespace glotwave::dsp {
namespace {

size_t CircularIndex(long long i, int n) {
  long long r = i % n;
  if (r < 0) r += n;
  return static_cast<size_t>(r);
}

}  // namespace

std::vector<double> PlaceCentered(std::span<const double> segment, int center,
                                  int fft_size) {
  if (static_cast<long long>(segment.size()) > fft_size) {
    throw ValidationError("segment of length " + std::to_string(segment.size()) +
                          " does not fit fft_size " + std::to_string(fft_size));
  }
  if (center < 0 || (!segment.empty() && center >= static_cast<int>(segment.size()))) {
    throw ValidationError("segment center " + std::to_string(center) +
                          " outside segment");
  }
  std::vector<double> buffer(fft_size, 0.0);
  const long long origin = fft_size / 2 - center;
  for (size_t i = 0; i < segment.size(); ++i) {
    buffer[CircularIndex(origin + static_cast<long long>(i), fft_size)] = segment[i];
  }
  return buffer;
}

std::vector<double> ExtractCentered(std::span<const double> buffer, int left,
                                    int right) {
  const int n = static_cast<int>(buffer.size());
  if (left < 0 || right < 0 || left + right + 1 > n) {
    throw ValidationError("cannot extract " + std::to_string(left + right + 1) +
                          " samples from a buffer of " + std::to_string(n));
  }
  std::vector<double> out(left + right + 1);
  const long long origin = n / 2 - left;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = buffer[CircularIndex(origin + static_cast<long long>(i), n)];
  }
  return out;
}

SpectrumFrame AnalyzeSpectrum(std::span<const double> segment, int fft_size,
                              std::optional<int> center) {
  const RealFft fft(fft_size);
  const int c = center.value_or(static_cast<int>(segment.size() / 2));
  const auto bins = fft.Forward(PlaceCentered(segment, c, fft_size));
  SpectrumFrame frame;
  frame.fft_size = fft_size;
  frame.log_mag.resize(bins.size());
  frame.phase.resize(bins.size());
  for (size_t k = 0; k < bins.size(); ++k) {
    frame.log_mag[k] = std::log(std::abs(bins[k]) + kMagnitudeFloor);
    frame.phase[k] = WrapPhase(std::arg(bins[k]));
  }
  return frame;
}

std::vector<double> InverseSpectrum(const SpectrumFrame& frame) {
  ValidateSpectrumFrame(frame);
  const RealFft fft(frame.fft_size);
  std::vector<std::complex<double>> bins(frame.num_bins());
  for (size_t k = 0; k < bins.size(); ++k) {
    bins[k] = std::polar(std::exp(frame.log_mag[k]), frame.phase[k]);
  }
  return fft.Inverse(bins);
}

SpectrumFrame MinimumPhaseFrame(std::span<const double> log_mag, int fft_size,
                                int onset_offset) {
  const RealFft fft(fft_size);
  if (static_cast<int>(log_mag.size()) != fft.num_bins()) {
    throw ValidationError("log magnitude has " + std::to_string(log_mag.size()) +
                          " bins, fft_size " + std::to_string(fft_size) +
                          " needs " + std::to_string(fft.num_bins()));
  }
  std::vector<std::complex<double>> spectrum(log_mag.begin(), log_mag.end());
  std::vector<double> cepstrum = fft.Inverse(spectrum);
  const int half = fft_size / 2;
  for (int n = 1; n < half; ++n) cepstrum[n] *= 2.0;
  for (int n = half + 1; n < fft_size; ++n) cepstrum[n] = 0.0;
  const auto folded = fft.Forward(cepstrum);

  SpectrumFrame frame;
  frame.fft_size = fft_size;
  frame.log_mag.assign(log_mag.begin(), log_mag.end());
  frame.phase.resize(folded.size());
  const double shift = half + onset_offset;
  for (size_t k = 0; k < folded.size(); ++k) {
    const double linear = -2.0 * std::numbers::pi * static_cast<double>(k) * shift / fft_size;
    frame.phase[k] = WrapPhase(folded[k].imag() + linear);
  }
  return frame;
}

void ValidateSpectrumFrame(const SpectrumFrame& frame) {
  if (!IsPowerOfTwo(frame.fft_size) || frame.fft_size < 2) {
    throw ValidationError("spectrum fft_size " + std::to_string(frame.fft_size) +
                          " is not a power of two");
  }
  const auto k = static_cast<size_t>(frame.num_bins());
  if (frame.log_mag.size() != k || frame.phase.size() != k) {
    throw ValidationError("spectrum frame bin count mismatch: expected " +
                          std::to_string(k) + ", got " +
                          std::to_string(frame.log_mag.size()) + "/" +
                          std::to_string(frame.phase.size()));
  }
}

}  // namespace glotwave::dsp
