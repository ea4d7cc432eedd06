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

// Objective distances between a reconstructed or predicted utterance and
// its reference, computed at GCI level.

#ifndef GLOTWAVE_METRICS_H_
#define GLOTWAVE_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "glotwave/analysis.h"
#include "glotwave/signal_io.h"

namespace glotwave {

// A metric value with the number of frames or samples behind it. An empty
// set reports value 0 and count 0.
struct MetricValue {
  double value = 0.0;
  size_t count = 0;
};

using FrameSet = std::vector<std::vector<double>>;

struct GciPair {
  size_t pred = 0;
  size_t ref = 0;
};

// Pairs each predicted instant with its nearest reference instant. Pairs
// farther than half the local reference period are dropped and each
// reference instant is used once, closest pairs first. The local period is
// the mean of the adjacent reference gaps, or fallback_period for a
// single-instant reference. Result is ordered by pred index.
std::vector<GciPair> AlignGci(std::span<const int64_t> pred,
                              std::span<const int64_t> ref,
                              double fallback_period);
std::vector<GciPair> AlignGci(const GciTrack& pred, const GciTrack& ref,
                              double fallback_period);

struct RmseResult {
  MetricValue voiced;
  MetricValue unvoiced;
  MetricValue all;
};

RmseResult RmseWaveform(const Waveform& a, const Waveform& b,
                        const std::vector<bool>& voiced_mask);

// Frames hold natural-log magnitudes ln s(j, k); the distance is taken on
// 10 log10 s as sqrt(mean_j sum_k d^2).
MetricValue Lsd(const FrameSet& sp, const FrameSet& sg);

// Frames hold cepstra c(0..); coefficients 1..order enter the distance.
MetricValue Mcd(const FrameSet& cp, const FrameSet& cg, int order);

// Mean per-frame Euclidean norm of component differences, wrapped into
// (-pi, pi] unless `wrap` is false.
MetricValue Dpd(const FrameSet& dp, const FrameSet& dg, bool wrap = true);

struct F0VuvResult {
  MetricValue rmse_f0;         // Hz, pairs voiced on both sides
  MetricValue vuv_error_rate;  // fraction of pairs
};

F0VuvResult F0AndVuv(const FeatureStream& pred, const FeatureStream& ref,
                     std::span<const GciPair> pairs);

enum class MagnitudeSource {
  kAuto,      // full-mode log_mag when both streams carry it, else envelope
  kEnvelope,  // LSP envelope with gain
};

struct MetricsConfig {
  bool dpd_wrap = true;
  MagnitudeSource lsd_source = MagnitudeSource::kAuto;
  int mel_bands = 40;
  int mcd_order = 24;
};

struct MetricsReport {
  MetricValue rmse_voiced;
  MetricValue rmse_unvoiced;
  MetricValue rmse;
  MetricValue lsd;
  MetricValue mcd;
  MetricValue dpd;
  MetricValue rmse_f0;
  MetricValue vuv_error_rate;
};

// Per-sample voicing of the reference: each instant's flag covers the half
// gaps on either side. Samples outside [first, last] instant are false.
std::vector<bool> VoicingMask(const FeatureStream& ref, int64_t num_samples);

// Magnitude frame of segment s: log_mag_full, or the LSP envelope scaled for
// a two-period segment.
std::vector<double> StreamLogMagnitude(const FeatureStream& stream, size_t s,
                                       MagnitudeSource source);

// Waveform RMSE over [first, last] reference position; frame metrics over
// aligned pairs whose reference segment is voiced.
MetricsReport Evaluate(const Waveform& pred_wav, const Waveform& ref_wav,
                       const FeatureStream& pred_stream,
                       const FeatureStream& ref_stream,
                       const MetricsConfig& cfg = {});

// "name value count" per line.
std::string ReportToText(const MetricsReport& r);
std::string ReportToJson(const MetricsReport& r);

}  // namespace glotwave

#endif  // GLOTWAVE_METRICS_H_
