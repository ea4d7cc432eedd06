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

// Waveform reconstruction from a FeatureStream by pitch-synchronous
// overlap-add, plus the minimum-phase baseline that discards the stored phase.

#ifndef GLOTWAVE_SYNTHESIS_H_
#define GLOTWAVE_SYNTHESIS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "glotwave/analysis.h"
#include "glotwave/signal_io.h"

namespace glotwave {

enum class PositionSource {
  kStored,     // place segments at the analysed GCI positions
  kGenerated,  // accumulate positions from exp(log_f0)
};

struct SynthesisConfig {
  PositionSource positions = PositionSource::kStored;
  double ola_floor = 1e-3;
  bool truncate_long_segments = false;
  // Minimum-phase baseline: onset of each response relative to its GCI.
  int min_phase_onset_offset = 0;
  // Allow the minimum-phase baseline on parametric streams by deriving the
  // magnitude from the LSP envelope.
  bool min_phase_from_envelope = false;
};

struct SynthesisResult {
  Waveform waveform;
  // Factor applied to avoid clipping; 1 when no normalization was needed.
  double scale = 1.0;
};

// phase[0] = feature[0]; phase[k] = wrap(phase[k-1] + feature[k]).
std::vector<double> DecodePhase(std::span<const double> phase_feature);

// Per-segment placement used by synthesis.
struct SegmentPlacement {
  int64_t position = 0;
  SegmentExtent extent;
};

// Stored mode: neighbouring positions give the extents; the first segment
// mirrors its right side and the last takes its right side from log_f0.
// Generated mode: positions accumulate fs / exp(log_f0) with the rounding
// residue carried forward.
std::vector<SegmentPlacement> LayoutSegments(const FeatureStream& stream,
                                             const SynthesisConfig& cfg);

// log|X_k| of a parametric segment: unit-gain LSP envelope shifted so the
// segment energy equals length * exp(2 gain).
std::vector<double> ParametricLogMagnitude(const SegmentFeatures& f,
                                           int segment_length, int fft_size);

Segment FeaturesToSegment(const SegmentFeatures& f, const SegmentPlacement& place,
                          const FeatureStream& stream);

// Sum of the analysis windows asymmetric_hann(left, right) placed at each
// segment: the normalizer of OverlapAdd.
std::vector<double> OverlapEnvelope(std::span<const Segment> segments,
                                    std::span<const int64_t> positions,
                                    int64_t total_len);

// Sums segments at their positions and divides by OverlapEnvelope clamped
// below at ola_floor. Samples with no window support stay zero. With
// `one_sided_edges` the flanks before the first and after the last position
// are left undivided, so untapered segment content is not amplified there.
std::vector<double> OverlapAdd(std::span<const Segment> segments,
                               std::span<const int64_t> positions,
                               int64_t total_len, double ola_floor = 1e-3,
                               bool one_sided_edges = false);

SynthesisResult Synthesize(const FeatureStream& stream,
                           const SynthesisConfig& cfg = {});

SynthesisResult SynthesizeMinPhase(const FeatureStream& stream,
                                   const SynthesisConfig& cfg = {});

}  // namespace glotwave

#endif  // GLOTWAVE_SYNTHESIS_H_
