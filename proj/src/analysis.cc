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

#include "glotwave/analysis.h"

#include <cmath>
#include <numbers>
#include <string>

#include "glotwave/dsp/fft.h"
#include "glotwave/dsp/lpc.h"
#include "glotwave/dsp/lsp.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/dsp/spectrum.h"
#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"

namespace glotwave {
namespace {

Segment MakeSegment(const Waveform& w, int64_t center, int left, int right,
                    bool voiced) {
  Segment seg;
  seg.center = center;
  seg.left_len = left;
  seg.right_len = right;
  seg.voiced = voiced;
  const auto window = dsp::AsymmetricHann(left, right);
  seg.samples.resize(window.size());
  for (size_t i = 0; i < window.size(); ++i) {
    seg.samples[i] = window[i] * w.samples[center - left + static_cast<int64_t>(i)];
  }
  return seg;
}

// Levinson output is minimum phase, but poles hugging the unit circle can
// defeat the LSP root scan; shrink the poles slightly until it succeeds.
dsp::LspVector RobustLsp(dsp::LpcModel model) {
  for (int attempt = 0;; ++attempt) {
    try {
      return dsp::LpcToLsp(model);
    } catch (const ValidationError&) {
      if (attempt == 8) throw;
      double g = 1.0;
      for (size_t i = 1; i < model.a.size(); ++i) {
        g *= 0.995;
        model.a[i] *= g;
      }
    }
  }
}

}  // namespace

SegmentExtent FitExtent(int left_len, int right_len, int fft_size, bool truncate) {
  const int length = left_len + right_len + 1;
  if (length <= fft_size) return {left_len, right_len};
  if (!truncate) {
    throw ValidationError("segment of " + std::to_string(length) +
                          " samples exceeds fft_size " + std::to_string(fft_size) +
                          " (F0 too low); enable truncation or raise fft_size");
  }
  const int excess = length - fft_size;
  SegmentExtent e{left_len - (excess + 1) / 2, right_len - excess / 2};
  if (e.left_len < 1 || e.right_len < 1) {
    throw ValidationError("cannot truncate segment to fft_size " +
                          std::to_string(fft_size));
  }
  return e;
}

std::vector<Segment> ExtractSegments(const Waveform& w, const GciTrack& g) {
  if (g.size() < 3) {
    throw ValidationError("segment extraction needs at least 3 GCIs, got " +
                          std::to_string(g.size()));
  }
  const auto n = static_cast<int64_t>(w.samples.size());
  std::vector<Segment> segments;
  segments.reserve(g.size() - 2);
  for (size_t s = 1; s + 1 < g.size(); ++s) {
    const int64_t prev = g.instants[s - 1], here = g.instants[s], next = g.instants[s + 1];
    if (prev < 0 || next >= n || !(prev < here && here < next)) {
      throw ValidationError("GCI track invalid around instant " + std::to_string(s));
    }
    segments.push_back(MakeSegment(w, here, static_cast<int>(here - prev),
                                   static_cast<int>(next - here), g.voiced[s]));
  }
  return segments;
}

std::vector<double> EncodePhase(std::span<const double> phase) {
  std::vector<double> out(phase.size());
  for (size_t k = 0; k < phase.size(); ++k) {
    out[k] = k == 0 ? phase[0] : dsp::WrapPhase(phase[k] - phase[k - 1]);
  }
  return out;
}

SegmentFeatures SegmentToFeatures(const Segment& seg, int fs,
                                  const AnalysisConfig& cfg) {
  const int length = static_cast<int>(seg.samples.size());
  if (length > cfg.fft_size) {
    throw ValidationError("segment at sample " + std::to_string(seg.center) +
                          " has " + std::to_string(length) +
                          " samples, more than fft_size " +
                          std::to_string(cfg.fft_size));
  }
  const auto spectrum = dsp::AnalyzeSpectrum(seg.samples, cfg.fft_size, seg.left_len);

  SegmentFeatures f;
  f.voiced = seg.voiced;
  f.log_f0 = seg.voiced
                 ? std::log(static_cast<double>(fs) / seg.right_len)
                 : std::log(1.0 / cfg.detection.unvoiced_shift_s);
  f.phase_feature = EncodePhase(spectrum.phase);
  if (cfg.mode == FeatureMode::kFull) f.log_mag_full = spectrum.log_mag;

  double energy = 0.0;
  for (double v : seg.samples) energy += v * v;
  const double rms = std::sqrt(energy / length);
  f.gain = std::log(std::max(rms, dsp::kMagnitudeFloor));

  const auto r = dsp::Autocorrelation(seg.samples, cfg.lsp_order);
  if (r[0] > 0.0) {
    f.lsp = RobustLsp(dsp::LpcFromAutocorr(r)).frequencies;
  } else {
    f.lsp = dsp::FlatLsp(cfg.lsp_order).frequencies;
  }
  return f;
}

FeatureStream AnalyzeTrack(const Waveform& w, const GciTrack& track,
                           const AnalysisConfig& cfg) {
  if (!dsp::IsPowerOfTwo(cfg.fft_size) || cfg.fft_size < 64) {
    throw ConfigError("fft_size must be a power of two >= 64");
  }
  if (cfg.lsp_order < 2 || cfg.lsp_order % 2 != 0 || cfg.lsp_order >= cfg.fft_size / 2) {
    throw ConfigError("lsp_order must be even and below fft_size / 2");
  }
  if (track.size() < 3) {
    throw ValidationError("analysis needs at least 3 GCIs, found " +
                          std::to_string(track.size()));
  }
  FeatureStream stream;
  stream.fs = w.fs;
  stream.fft_size = cfg.fft_size;
  stream.mode = cfg.mode;
  const auto n = static_cast<int64_t>(w.samples.size());
  for (size_t s = 1; s + 1 < track.size(); ++s) {
    const int64_t prev = track.instants[s - 1], here = track.instants[s],
                  next = track.instants[s + 1];
    if (prev < 0 || next >= n || !(prev < here && here < next)) {
      throw ValidationError("GCI track invalid around instant " + std::to_string(s));
    }
    const int left = static_cast<int>(here - prev);
    const int right = static_cast<int>(next - here);
    SegmentExtent e;
    try {
      e = FitExtent(left, right, cfg.fft_size, cfg.truncate_long_segments);
    } catch (const ValidationError& err) {
      throw ValidationError("segment " + std::to_string(s - 1) + " at sample " +
                            std::to_string(here) + ": " + err.what());
    }
    const Segment seg = MakeSegment(w, here, e.left_len, e.right_len, track.voiced[s]);
    SegmentFeatures f = SegmentToFeatures(seg, w.fs, cfg);
    if (f.voiced) f.log_f0 = std::log(static_cast<double>(w.fs) / right);
    stream.segments.push_back(std::move(f));
    stream.positions.push_back(here);
  }
  return stream;
}

FeatureStream Analyze(const Waveform& w, const F0Contour& f0_ref,
                      const AnalysisConfig& cfg) {
  DetectionConfig detection = cfg.detection;
  if (!cfg.truncate_long_segments && detection.max_gap_samples == 0) {
    // Keep every two-period segment within one FFT frame.
    detection.max_gap_samples = (cfg.fft_size - 1) / 2;
  }
  return AnalyzeTrack(w, DetectGci(w, f0_ref, detection), cfg);
}

void ValidateFeatureStream(const FeatureStream& stream) {
  if (stream.fs <= 0) throw ValidationError("feature stream fs must be > 0");
  if (!dsp::IsPowerOfTwo(stream.fft_size) || stream.fft_size < 2) {
    throw ValidationError("feature stream fft_size must be a power of two");
  }
  if (stream.positions.size() != stream.segments.size()) {
    throw ValidationError("feature stream: positions and segments differ in count");
  }
  const auto k = static_cast<size_t>(stream.num_bins());
  const size_t lsp_dim = stream.segments.empty() ? 0 : stream.segments[0].lsp.size();
  for (size_t s = 0; s < stream.segments.size(); ++s) {
    const auto& f = stream.segments[s];
    const std::string where = "segment " + std::to_string(s) + ": ";
    if (s > 0 && stream.positions[s] <= stream.positions[s - 1]) {
      throw ValidationError(where + "positions not strictly increasing");
    }
    if (f.phase_feature.size() != k) {
      throw ValidationError(where + "phase feature has " +
                            std::to_string(f.phase_feature.size()) + " bins, expected " +
                            std::to_string(k));
    }
    for (double v : f.phase_feature) {
      if (!(v > -std::numbers::pi && v <= std::numbers::pi)) {
        throw ValidationError(where + "phase feature value outside (-pi, pi]");
      }
    }
    if (f.lsp.size() != lsp_dim) throw ValidationError(where + "LSP dimension changes");
    dsp::ValidateLsp({f.lsp});
    const size_t want = stream.mode == FeatureMode::kFull ? k : 0;
    if (f.log_mag_full.size() != want) {
      throw ValidationError(where + "log magnitude has " +
                            std::to_string(f.log_mag_full.size()) +
                            " values, expected " + std::to_string(want));
    }
    if (!std::isfinite(f.log_f0) || !std::isfinite(f.gain)) {
      throw ValidationError(where + "non-finite log_f0 or gain");
    }
  }
}

}  // namespace glotwave
