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

// Glottal-synchronous decomposition of a waveform into per-segment features.

#ifndef GLOTWAVE_ANALYSIS_H_
#define GLOTWAVE_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "glotwave/gci.h"
#include "glotwave/signal_io.h"

namespace glotwave {

// Two-period windowed excerpt x_s(n) = h_s(n) x(n) anchored at one GCI.
struct Segment {
  int64_t center = 0;
  int left_len = 0;
  int right_len = 0;
  std::vector<double> samples;  // left_len + right_len + 1 values
  bool voiced = false;
};

enum class FeatureMode : uint8_t { kParametric = 0, kFull = 1 };

struct SegmentFeatures {
  bool voiced = false;
  double log_f0 = 0.0;
  double gain = 0.0;                  // log RMS of the windowed segment
  std::vector<double> lsp;            // radians, strictly increasing
  std::vector<double> phase_feature;  // [theta_0, tau_1, ..., tau_{K-1}]
  std::vector<double> log_mag_full;   // K values, full mode only
};

struct FeatureStream {
  int fs = 0;
  int fft_size = 0;
  FeatureMode mode = FeatureMode::kFull;
  std::vector<SegmentFeatures> segments;
  std::vector<int64_t> positions;  // one GCI sample index per segment

  int num_bins() const { return fft_size / 2 + 1; }
};

struct AnalysisConfig {
  int fft_size = 512;
  int lsp_order = 40;
  FeatureMode mode = FeatureMode::kFull;
  // Segments wider than fft_size are an error unless this is set, in which
  // case both sides are trimmed symmetrically.
  bool truncate_long_segments = false;
  DetectionConfig detection;
};

// Segment extent after fitting into fft_size (see truncate_long_segments).
struct SegmentExtent {
  int left_len = 0;
  int right_len = 0;
};
SegmentExtent FitExtent(int left_len, int right_len, int fft_size, bool truncate);

std::vector<Segment> ExtractSegments(const Waveform& w, const GciTrack& g);

// out[0] = phase[0]; out[k] = wrap(phase[k] - phase[k-1]).
std::vector<double> EncodePhase(std::span<const double> phase);

SegmentFeatures SegmentToFeatures(const Segment& seg, int fs,
                                  const AnalysisConfig& cfg);

// Features of every interior GCI of `track`.
FeatureStream AnalyzeTrack(const Waveform& w, const GciTrack& track,
                           const AnalysisConfig& cfg);

// DetectGci followed by AnalyzeTrack.
FeatureStream Analyze(const Waveform& w, const F0Contour& f0_ref,
                      const AnalysisConfig& cfg = {});

// Throws ValidationError if stream-level or per-segment invariants fail.
void ValidateFeatureStream(const FeatureStream& stream);

}  // namespace glotwave

#endif  // GLOTWAVE_ANALYSIS_H_
