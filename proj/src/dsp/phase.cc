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

#include "glotwave/dsp/phase.h"

#include <cmath>
#include <numbers>

#include "glotwave/errors.h"

namespace glotwave::dsp {

double WrapPhase(double x) {
  if (!std::isfinite(x)) throw ValidationError("cannot wrap a non-finite phase");
  constexpr double kTwoPi = 2 * std::numbers::pi;
  // std::remainder is exact and lands in [-pi, pi]; fold -pi onto +pi.
  double r = std::remainder(x, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

}  // namespace glotwave::dsp
