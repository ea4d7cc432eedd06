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

#ifndef GLOTWAVE_DSP_MEL_CEPSTRUM_H_
#define GLOTWAVE_DSP_MEL_CEPSTRUM_H_

#include <span>
#include <vector>

namespace glotwave::dsp {

inline constexpr int kDefaultMelBands = 40;
inline constexpr int kDefaultMelCepstrumOrder = 24;

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters on the mel scale spanning 0..fs/2, each normalized to
// unit weight sum so a flat power spectrum yields equal band energies.
// weights[b][k] for band b and bin k.
std::vector<std::vector<double>> MelFilterbank(int num_bins, int fft_size,
                                               int fs, int n_mels);

// Filterbank on the power spectrum exp(2 log_mag), natural log of the band
// energies, orthonormal DCT-II; returns c[0..order].
std::vector<double> MelCepstrum(std::span<const double> log_mag, int fft_size,
                                int fs, int n_mels = kDefaultMelBands,
                                int order = kDefaultMelCepstrumOrder);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_MEL_CEPSTRUM_H_
