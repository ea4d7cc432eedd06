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

#include "glotwave/dsp/window.h"

#include <cmath>
#include <numbers>
#include <string>

#include "glotwave/errors.h"

namespace glotwave::dsp {

using std::numbers::pi;

std::vector<double> AsymmetricHann(int left, int right) {
  if (left < 1 || right < 1) {
    throw ValidationError("asymmetric Hann needs positive half lengths, got (" +
                          std::to_string(left) + ", " + std::to_string(right) +
                          ")");
  }
  std::vector<double> w(left + right + 1);
  for (int j = 0; j <= left; ++j) w[j] = 0.5 - 0.5 * std::cos(pi * j / left);
  for (int j = 1; j <= right; ++j) {
    w[left + j] = 0.5 + 0.5 * std::cos(pi * j / right);
  }
  // Pin the end points; cos(pi) is not exactly -1 in floating point.
  w.front() = 0.0;
  w[left] = 1.0;
  w.back() = 0.0;
  return w;
}

std::vector<double> Blackman(int half_length) {
  if (half_length < 1) throw ValidationError("Blackman half length must be >= 1");
  std::vector<double> w(2 * half_length + 1);
  for (int m = -half_length; m <= half_length; ++m) {
    const double x = pi * m / half_length;
    w[m + half_length] = 0.42 + 0.5 * std::cos(x) + 0.08 * std::cos(2 * x);
  }
  w.front() = 0.0;
  w.back() = 0.0;
  return w;
}

std::vector<double> Hann(int n) {
  if (n < 1) throw ValidationError("Hann length must be >= 1");
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2 * pi * i / n);
  return w;
}

}  // namespace glotwave::dsp
