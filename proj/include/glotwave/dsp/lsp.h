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

#ifndef GLOTWAVE_DSP_LSP_H_
#define GLOTWAVE_DSP_LSP_H_

#include <vector>

#include "glotwave/dsp/lpc.h"

namespace glotwave::dsp {

// Line spectral frequencies in radians, strictly increasing in (0, pi).
// Even positions come from the sum polynomial P(z), odd ones from Q(z).
struct LspVector {
  std::vector<double> frequencies;
};

inline constexpr int kLspScanPoints = 2048;
inline constexpr double kLspTolerance = 1e-14;
// P/Q order swaps smaller than this are treated as rounding in the
// coefficients of a marginally stable model.
inline constexpr double kLspQuadSlack = 1e-12;

// Roots of P(z) = A(z) + z^-(p+1) A(1/z) and Q(z) = A(z) - z^-(p+1) A(1/z),
// excluding the trivial roots at z = -1 (P) and z = 1 (Q). The order must be
// even. Throws ValidationError if the roots do not interlace on the unit
// circle (model not minimum phase).
LspVector LpcToLsp(const LpcModel& m);

// Rebuilds A(z) = (P(z) + Q(z)) / 2 from the paired roots. gain = 1.
LpcModel LspToLpc(const LspVector& v);

// Throws ValidationError unless frequencies are strictly increasing in
// (0, pi) and the count is even.
void ValidateLsp(const LspVector& v);

// Frequencies of the flat all-pass model A(z) = 1: k pi / (order + 1).
LspVector FlatLsp(int order);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_LSP_H_
