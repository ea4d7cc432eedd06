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

#include "glotwave/synthesis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "glotwave/dsp/lpc.h"
#include "glotwave/dsp/lsp.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/dsp/spectrum.h"
#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"

namespace glotwave {
namespace {

int PeriodFromLogF0(double log_f0, int fs) {
  return std::max(1, static_cast<int>(std::lround(fs / std::exp(log_f0))));
}

std::vector<double> SegmentLogMagnitude(const SegmentFeatures& f,
                                        const FeatureStream& stream,
                                        int segment_length) {
  if (stream.mode == FeatureMode::kFull) return f.log_mag_full;
  return ParametricLogMagnitude(f, segment_length, stream.fft_size);
}

std::vector<Segment> RenderSegments(const FeatureStream& stream,
                                    const std::vector<SegmentPlacement>& layout,
                                    bool min_phase, int onset_offset) {
  std::vector<Segment> segments;
  segments.reserve(layout.size());
  for (size_t s = 0; s < layout.size(); ++s) {
    const auto& f = stream.segments[s];
    if (!min_phase) {
      segments.push_back(FeaturesToSegment(f, layout[s], stream));
      continue;
    }
    const auto& e = layout[s].extent;
    const auto log_mag = SegmentLogMagnitude(f, stream, e.left_len + e.right_len + 1);
    const auto frame = dsp::MinimumPhaseFrame(log_mag, stream.fft_size, onset_offset);
    Segment seg;
    seg.center = layout[s].position;
    seg.left_len = e.left_len;
    seg.right_len = e.right_len;
    seg.voiced = f.voiced;
    seg.samples = dsp::ExtractCentered(dsp::InverseSpectrum(frame), e.left_len, e.right_len);
    segments.push_back(std::move(seg));
  }
  return segments;
}

SynthesisResult Assemble(const std::vector<Segment>& segments,
                         const std::vector<SegmentPlacement>& layout, int fs,
                         double ola_floor) {
  std::vector<int64_t> positions;
  positions.reserve(layout.size());
  for (const auto& p : layout) positions.push_back(p.position);
  const int64_t total = layout.back().position + layout.back().extent.right_len + 1;
  SynthesisResult result;
  result.waveform.fs = fs;
  result.waveform.samples = OverlapAdd(segments, positions, total, ola_floor, true);
  double peak = 0.0;
  for (double v : result.waveform.samples) peak = std::max(peak, std::abs(v));
  if (peak > 1.0) {
    result.scale = 1.0 / peak;
    for (double& v : result.waveform.samples) v *= result.scale;
  }
  return result;
}

void RequireNonEmpty(const FeatureStream& stream) {
  ValidateFeatureStream(stream);
  if (stream.segments.empty()) throw ValidationError("cannot synthesize an empty feature stream");
}

}  // namespace

std::vector<double> DecodePhase(std::span<const double> phase_feature) {
  std::vector<double> phase(phase_feature.size());
  for (size_t k = 0; k < phase_feature.size(); ++k) {
    phase[k] = k == 0 ? phase_feature[0]
                      : dsp::WrapPhase(phase[k - 1] + phase_feature[k]);
  }
  return phase;
}

std::vector<SegmentPlacement> LayoutSegments(const FeatureStream& stream,
                                             const SynthesisConfig& cfg) {
  const size_t count = stream.segments.size();
  std::vector<int64_t> pos(count);
  if (cfg.positions == PositionSource::kStored) {
    pos = stream.positions;
  } else {
    double acc = 0.0;
    for (size_t s = 0; s < count; ++s) {
      const double period = stream.fs / std::exp(stream.segments[s].log_f0);
      if (s == 0) acc = period;
      pos[s] = std::llround(acc);
      acc += period;
    }
  }
  std::vector<SegmentPlacement> layout(count);
  for (size_t s = 0; s < count; ++s) {
    int right = s + 1 < count ? static_cast<int>(pos[s + 1] - pos[s])
                              : PeriodFromLogF0(stream.segments[s].log_f0, stream.fs);
    int left = s > 0 ? static_cast<int>(pos[s] - pos[s - 1]) : right;
    if (s == 0) left = static_cast<int>(std::min<int64_t>(left, pos[0]));
    if (left < 1 || right < 1) {
      throw ValidationError("segment " + std::to_string(s) +
                            " has an empty side after layout");
    }
    layout[s].position = pos[s];
    try {
      layout[s].extent =
          FitExtent(left, right, stream.fft_size, cfg.truncate_long_segments);
    } catch (const ValidationError& e) {
      throw ValidationError("segment " + std::to_string(s) + ": " + e.what());
    }
  }
  return layout;
}

std::vector<double> ParametricLogMagnitude(const SegmentFeatures& f,
                                           int segment_length, int fft_size) {
  const dsp::LpcModel model = dsp::LspToLpc({f.lsp});
  const int k = fft_size / 2 + 1;
  std::vector<double> env = dsp::LpcEnvelope(model, k, fft_size);
  double energy = 0.0;
  for (int i = 0; i < k; ++i) {
    const double p = std::exp(2.0 * env[i]);
    energy += (i == 0 || i == k - 1) ? p : 2.0 * p;
  }
  energy /= fft_size;
  const double target = segment_length * std::exp(2.0 * f.gain);
  const double offset = 0.5 * std::log(target / energy);
  for (double& v : env) v += offset;
  return env;
}

Segment FeaturesToSegment(const SegmentFeatures& f, const SegmentPlacement& place,
                          const FeatureStream& stream) {
  const int k = stream.num_bins();
  if (static_cast<int>(f.phase_feature.size()) != k) {
    throw ValidationError("phase feature has " +
                          std::to_string(f.phase_feature.size()) +
                          " bins, stream expects " + std::to_string(k));
  }
  dsp::ValidateLsp({f.lsp});
  const auto& e = place.extent;
  const int length = e.left_len + e.right_len + 1;
  dsp::SpectrumFrame frame;
  frame.fft_size = stream.fft_size;
  frame.log_mag = SegmentLogMagnitude(f, stream, length);
  frame.phase = DecodePhase(f.phase_feature);
  Segment seg;
  seg.center = place.position;
  seg.left_len = e.left_len;
  seg.right_len = e.right_len;
  seg.voiced = f.voiced;
  seg.samples = dsp::ExtractCentered(dsp::InverseSpectrum(frame), e.left_len, e.right_len);
  return seg;
}

std::vector<double> OverlapEnvelope(std::span<const Segment> segments,
                                    std::span<const int64_t> positions,
                                    int64_t total_len) {
  std::vector<double> env(std::max<int64_t>(total_len, 0), 0.0);
  for (size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    const auto h = dsp::AsymmetricHann(seg.left_len, seg.right_len);
    const int64_t start = positions[s] - seg.left_len;
    for (size_t i = 0; i < h.size(); ++i) {
      const int64_t n = start + static_cast<int64_t>(i);
      if (n >= 0 && n < total_len) env[n] += h[i];
    }
  }
  return env;
}

std::vector<double> OverlapAdd(std::span<const Segment> segments,
                               std::span<const int64_t> positions,
                               int64_t total_len, double ola_floor,
                               bool one_sided_edges) {
  if (segments.size() != positions.size()) {
    throw ValidationError("overlap-add: segment and position counts differ");
  }
  std::vector<double> acc(std::max<int64_t>(total_len, 0), 0.0);
  for (size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (s > 0 && positions[s] <= positions[s - 1]) {
      throw ValidationError("overlap-add: positions not strictly increasing at " +
                            std::to_string(s));
    }
    if (seg.samples.size() != static_cast<size_t>(seg.left_len + seg.right_len + 1)) {
      throw ValidationError("overlap-add: segment " + std::to_string(s) +
                            " length does not match its extent");
    }
    const int64_t start = positions[s] - seg.left_len;
    const int64_t stop = positions[s] + seg.right_len;
    if (start < 0 || stop >= total_len) {
      throw ValidationError("overlap-add: segment " + std::to_string(s) + " spans [" +
                            std::to_string(start) + ", " + std::to_string(stop) +
                            "], outside a buffer of " + std::to_string(total_len));
    }
    for (size_t i = 0; i < seg.samples.size(); ++i) {
      acc[start + static_cast<int64_t>(i)] += seg.samples[i];
    }
  }
  const auto env = OverlapEnvelope(segments, positions, total_len);
  const int64_t lo = positions.empty() ? 0 : positions.front();
  const int64_t hi = positions.empty() ? 0 : positions.back();
  for (int64_t n = 0; n < static_cast<int64_t>(acc.size()); ++n) {
    if (one_sided_edges && (n < lo || n > hi)) continue;
    acc[n] = env[n] > 0.0 ? acc[n] / std::max(env[n], ola_floor) : 0.0;
  }
  return acc;
}

SynthesisResult Synthesize(const FeatureStream& stream, const SynthesisConfig& cfg) {
  RequireNonEmpty(stream);
  const auto layout = LayoutSegments(stream, cfg);
  const auto segments = RenderSegments(stream, layout, false, 0);
  return Assemble(segments, layout, stream.fs, cfg.ola_floor);
}

SynthesisResult SynthesizeMinPhase(const FeatureStream& stream,
                                   const SynthesisConfig& cfg) {
  RequireNonEmpty(stream);
  if (stream.mode != FeatureMode::kFull && !cfg.min_phase_from_envelope) {
    throw ConfigError(
        "minimum-phase synthesis needs full-mode magnitudes; enable "
        "min_phase_from_envelope to use the LSP envelope instead");
  }
  const auto layout = LayoutSegments(stream, cfg);
  const auto segments = RenderSegments(stream, layout, true, cfg.min_phase_onset_offset);
  return Assemble(segments, layout, stream.fs, cfg.ola_floor);
}

}  // namespace glotwave
