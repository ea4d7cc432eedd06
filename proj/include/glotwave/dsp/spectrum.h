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

// Segment <-> (log-magnitude, phase) conversion on an fft_size grid.
//
// A segment of length L <= fft_size is laid out circularly so that its anchor
// sample lands on buffer index fft_size / 2:
//
//   buffer[(fft_size / 2 - center + i) mod fft_size] = segment[i]
//
// The layout is a bijection for any L <= fft_size, so asymmetric segments
// whose halves differ in length are representable as long as the total fits.

#ifndef GLOTWAVE_DSP_SPECTRUM_H_
#define GLOTWAVE_DSP_SPECTRUM_H_

#include <optional>
#include <span>
#include <vector>

namespace glotwave::dsp {

// Floor added to |X_k| before the log so silence stays finite. Not removed
// on inversion.
inline constexpr double kMagnitudeFloor = 1e-10;

struct SpectrumFrame {
  std::vector<double> log_mag;  // log(|X_k| + kMagnitudeFloor), natural log
  std::vector<double> phase;    // arg(X_k) in (-pi, pi]
  int fft_size = 0;

  int num_bins() const { return fft_size / 2 + 1; }
};

// `center` is the index within `segment` placed at fft_size / 2; it defaults
// to segment.size() / 2.
SpectrumFrame AnalyzeSpectrum(std::span<const double> segment, int fft_size,
                              std::optional<int> center = std::nullopt);

// Length fft_size real buffer.
std::vector<double> InverseSpectrum(const SpectrumFrame& frame);

std::vector<double> PlaceCentered(std::span<const double> segment, int center,
                                  int fft_size);

// Reads back the left + right + 1 samples around buffer index fft_size / 2
// using the same circular layout as PlaceCentered.
std::vector<double> ExtractCentered(std::span<const double> buffer, int left,
                                    int right);

// Replaces the phase of a log-magnitude spectrum with its minimum-phase
// counterpart (real cepstrum folding). The response onset is moved from
// buffer index 0 to fft_size / 2 + onset_offset so that ExtractCentered picks
// it up at the anchor.
SpectrumFrame MinimumPhaseFrame(std::span<const double> log_mag, int fft_size,
                                int onset_offset = 0);

// Throws ValidationError unless the frame is well-formed.
void ValidateSpectrumFrame(const SpectrumFrame& frame);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_SPECTRUM_H_
