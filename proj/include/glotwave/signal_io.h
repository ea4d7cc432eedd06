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

// Audio and reference-F0 file access.

#ifndef GLOTWAVE_SIGNAL_IO_H_
#define GLOTWAVE_SIGNAL_IO_H_

#include <string>
#include <vector>

namespace glotwave {

// Mono waveform with amplitudes normalized to [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int fs = 0;

  double duration_s() const {
    return fs > 0 ? static_cast<double>(samples.size()) / fs : 0.0;
  }
};

// Frame-rate F0 track. A value of 0 marks an unvoiced frame. Frame j is
// centered at time j * frame_shift_s.
struct F0Contour {
  double frame_shift_s = 0.005;
  std::vector<double> values;

  double duration_s() const { return frame_shift_s * values.size(); }
  // Value of the frame nearest to `time_s`, clamped to the contour ends.
  double ValueAt(double time_s) const;
};

// Reads a RIFF/WAVE PCM16 mono file. Samples are scaled by 1/32768.
Waveform ReadWav(const std::string& path);

// Writes PCM16 mono. Values are rounded to the nearest code and saturated to
// [-32768, 32767].
void WriteWav(const Waveform& w, const std::string& path);

// Parses a text file holding one F0 value (Hz) per line.
F0Contour ReadF0Ref(const std::string& path, double frame_shift_s);
F0Contour ParseF0Ref(const std::string& text, double frame_shift_s);

// Invariant checks shared by the pipeline entry points. Violations raise
// ValidationError.
void ValidateWaveform(const Waveform& w);
void ValidateF0Contour(const F0Contour& f0, double f0_min, double f0_max);

}  // namespace glotwave

#endif  // GLOTWAVE_SIGNAL_IO_H_
