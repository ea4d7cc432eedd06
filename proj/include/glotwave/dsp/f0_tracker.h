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

#ifndef GLOTWAVE_DSP_F0_TRACKER_H_
#define GLOTWAVE_DSP_F0_TRACKER_H_

#include "glotwave/signal_io.h"

namespace glotwave::dsp {

struct F0TrackerOptions {
  double frame_shift_s = 0.005;
  double f0_min = 50.0;
  double f0_max = 500.0;
  double voicing_threshold = 0.45;
  // Frames this far below the loudest frame are unvoiced.
  double silence_db = 30.0;
  // Analysis frame, long enough for two periods at f0_min.
  double frame_s = 0.04;
};

// Normalized-autocorrelation pitch tracker for when no external reference
// contour is available. Output frames follow the F0Contour convention (frame j
// centered at j * frame_shift_s) and are median filtered over 3 frames.
F0Contour EstimateF0Autocorr(const Waveform& w, const F0TrackerOptions& options = {});

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_F0_TRACKER_H_
