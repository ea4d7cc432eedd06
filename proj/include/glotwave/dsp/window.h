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

#ifndef GLOTWAVE_DSP_WINDOW_H_
#define GLOTWAVE_DSP_WINDOW_H_

#include <vector>

namespace glotwave::dsp {

// Hann window made of a rising half-cosine over `left` samples and a falling
// half-cosine over `right` samples. Length left + right + 1, zero at both
// ends, 1 at index `left`. Two windows that share a side length sum to 1 over
// that side, so pitch-synchronous windows anchored at consecutive marks
// overlap-add to a constant.
std::vector<double> AsymmetricHann(int left, int right);

// Symmetric Blackman window of length 2 * half_length + 1, zero at the ends.
std::vector<double> Blackman(int half_length);

// Periodic Hann window of length n (w[0] = 0, peak at n / 2).
std::vector<double> Hann(int n);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_WINDOW_H_
