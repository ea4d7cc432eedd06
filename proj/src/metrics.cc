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

#include "glotwave/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

#include "json.hpp"

#include "glotwave/dsp/mel_cepstrum.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/errors.h"
#include "glotwave/synthesis.h"

namespace glotwave {
namespace {

constexpr double kDbPerNeper = 10.0 / std::numbers::ln10;

void CheckShapes(const FrameSet& a, const FrameSet& b, const char* name) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(name) + ": frame counts differ (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j].size() != b[j].size()) {
      throw ValidationError(std::string(name) + ": frame " + std::to_string(j) +
                            " lengths differ");
    }
  }
}

std::vector<std::pair<std::string, MetricValue>> Entries(const MetricsReport& r) {
  return {{"rmse_voiced", r.rmse_voiced}, {"rmse_unvoiced", r.rmse_unvoiced},
          {"rmse", r.rmse},               {"lsd", r.lsd},
          {"mcd", r.mcd},                 {"dpd", r.dpd},
          {"rmse_f0", r.rmse_f0},         {"vuv_error_rate", r.vuv_error_rate}};
}

double LocalPeriod(std::span<const int64_t> ref, size_t r, double fallback) {
  double sum = 0.0;
  int n = 0;
  if (r > 0) {
    sum += static_cast<double>(ref[r] - ref[r - 1]);
    ++n;
  }
  if (r + 1 < ref.size()) {
    sum += static_cast<double>(ref[r + 1] - ref[r]);
    ++n;
  }
  return n > 0 ? sum / n : fallback;
}

}  // namespace

std::vector<GciPair> AlignGci(std::span<const int64_t> pred,
                              std::span<const int64_t> ref,
                              double fallback_period) {
  struct Match {
    int64_t distance;
    size_t pred;
    size_t ref;
  };
  std::vector<Match> matches;
  if (ref.empty()) return {};
  for (size_t p = 0; p < pred.size(); ++p) {
    auto it = std::lower_bound(ref.begin(), ref.end(), pred[p]);
    size_t best = it == ref.end() ? ref.size() - 1 : it - ref.begin();
    if (best > 0 && pred[p] - ref[best - 1] <= std::abs(ref[best] - pred[p])) --best;
    const int64_t d = std::abs(pred[p] - ref[best]);
    if (d <= 0.5 * LocalPeriod(ref, best, fallback_period)) {
      matches.push_back({d, p, best});
    }
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match& a, const Match& b) { return a.distance < b.distance; });
  std::vector<bool> used(ref.size(), false);
  std::vector<GciPair> pairs;
  for (const auto& m : matches) {
    if (used[m.ref]) continue;
    used[m.ref] = true;
    pairs.push_back({m.pred, m.ref});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const GciPair& a, const GciPair& b) { return a.pred < b.pred; });
  return pairs;
}

std::vector<GciPair> AlignGci(const GciTrack& pred, const GciTrack& ref,
                              double fallback_period) {
  return AlignGci(std::span<const int64_t>(pred.instants),
                  std::span<const int64_t>(ref.instants), fallback_period);
}

RmseResult RmseWaveform(const Waveform& a, const Waveform& b,
                        const std::vector<bool>& voiced_mask) {
  if (a.fs != b.fs) throw ValidationError("rmse: sample rates differ");
  if (a.samples.size() != b.samples.size() || voiced_mask.size() != a.samples.size()) {
    throw ValidationError("rmse: lengths differ (" + std::to_string(a.samples.size()) +
                          ", " + std::to_string(b.samples.size()) + ", mask " +
                          std::to_string(voiced_mask.size()) + ")");
  }
  double sum_v = 0.0, sum_u = 0.0;
  size_t n_v = 0, n_u = 0;
  for (size_t n = 0; n < a.samples.size(); ++n) {
    const double d = a.samples[n] - b.samples[n];
    if (voiced_mask[n]) {
      sum_v += d * d;
      ++n_v;
    } else {
      sum_u += d * d;
      ++n_u;
    }
  }
  auto rms = [](double s, size_t n) {
    return MetricValue{n ? std::sqrt(s / n) : 0.0, n};
  };
  return {rms(sum_v, n_v), rms(sum_u, n_u), rms(sum_v + sum_u, n_v + n_u)};
}

MetricValue Lsd(const FrameSet& sp, const FrameSet& sg) {
  CheckShapes(sp, sg, "lsd");
  if (sp.empty()) return {};
  double total = 0.0;
  for (size_t j = 0; j < sp.size(); ++j) {
    for (size_t k = 0; k < sp[j].size(); ++k) {
      const double d = kDbPerNeper * (sp[j][k] - sg[j][k]);
      total += d * d;
    }
  }
  return {std::sqrt(total / sp.size()), sp.size()};
}

MetricValue Mcd(const FrameSet& cp, const FrameSet& cg, int order) {
  CheckShapes(cp, cg, "mcd");
  if (cp.empty()) return {};
  double total = 0.0;
  for (size_t j = 0; j < cp.size(); ++j) {
    if (static_cast<int>(cp[j].size()) <= order) {
      throw ValidationError("mcd: frame " + std::to_string(j) + " has fewer than " +
                            std::to_string(order + 1) + " coefficients");
    }
    double s = 0.0;
    for (int k = 1; k <= order; ++k) {
      const double d = cp[j][k] - cg[j][k];
      s += d * d;
    }
    total += kDbPerNeper * std::sqrt(2.0 * s);
  }
  return {total / cp.size(), cp.size()};
}

MetricValue Dpd(const FrameSet& dp, const FrameSet& dg, bool wrap) {
  CheckShapes(dp, dg, "dpd");
  if (dp.empty()) return {};
  double total = 0.0;
  for (size_t j = 0; j < dp.size(); ++j) {
    double s = 0.0;
    for (size_t k = 0; k < dp[j].size(); ++k) {
      double d = dp[j][k] - dg[j][k];
      if (wrap) d = dsp::WrapPhase(d);
      s += d * d;
    }
    total += std::sqrt(s);
  }
  return {total / dp.size(), dp.size()};
}

F0VuvResult F0AndVuv(const FeatureStream& pred, const FeatureStream& ref,
                     std::span<const GciPair> pairs) {
  if (pairs.empty()) throw ValidationError("f0/vuv: no aligned pairs");
  double sum = 0.0;
  size_t voiced = 0, mismatched = 0;
  for (const auto& p : pairs) {
    if (p.pred >= pred.segments.size() || p.ref >= ref.segments.size()) {
      throw ValidationError("f0/vuv: pair index out of range");
    }
    const auto& a = pred.segments[p.pred];
    const auto& b = ref.segments[p.ref];
    if (a.voiced != b.voiced) ++mismatched;
    if (a.voiced && b.voiced) {
      const double d = std::exp(a.log_f0) - std::exp(b.log_f0);
      sum += d * d;
      ++voiced;
    }
  }
  F0VuvResult r;
  r.rmse_f0 = {voiced ? std::sqrt(sum / voiced) : 0.0, voiced};
  r.vuv_error_rate = {static_cast<double>(mismatched) / pairs.size(), pairs.size()};
  return r;
}

std::vector<bool> VoicingMask(const FeatureStream& ref, int64_t num_samples) {
  std::vector<bool> mask(std::max<int64_t>(num_samples, 0), false);
  const auto& pos = ref.positions;
  for (size_t s = 0; s < pos.size(); ++s) {
    if (!ref.segments[s].voiced) continue;
    const int64_t lo = s > 0 ? pos[s] - (pos[s] - pos[s - 1]) / 2 : pos[s];
    const int64_t hi = s + 1 < pos.size() ? pos[s] + (pos[s + 1] - pos[s] - 1) / 2 : pos[s];
    for (int64_t n = std::max<int64_t>(lo, 0); n <= hi && n < num_samples; ++n) {
      mask[n] = true;
    }
  }
  return mask;
}

std::vector<double> StreamLogMagnitude(const FeatureStream& stream, size_t s,
                                       MagnitudeSource source) {
  const auto& f = stream.segments[s];
  if (source == MagnitudeSource::kAuto && stream.mode == FeatureMode::kFull) {
    return f.log_mag_full;
  }
  const int period =
      std::max(1, static_cast<int>(std::lround(stream.fs / std::exp(f.log_f0))));
  return ParametricLogMagnitude(f, std::min(2 * period + 1, stream.fft_size),
                                stream.fft_size);
}

MetricsReport Evaluate(const Waveform& pred_wav, const Waveform& ref_wav,
                       const FeatureStream& pred_stream,
                       const FeatureStream& ref_stream, const MetricsConfig& cfg) {
  if (pred_wav.fs != ref_wav.fs || pred_stream.fs != ref_wav.fs ||
      ref_stream.fs != ref_wav.fs) {
    throw ValidationError("evaluate: sample rates differ (" +
                          std::to_string(pred_wav.fs) + ", " +
                          std::to_string(ref_wav.fs) + ", " +
                          std::to_string(pred_stream.fs) + ", " +
                          std::to_string(ref_stream.fs) + ")");
  }
  if (pred_stream.fft_size != ref_stream.fft_size) {
    throw ValidationError("evaluate: fft sizes differ");
  }
  if (ref_stream.segments.empty() || pred_stream.segments.empty()) {
    throw ValidationError("evaluate: empty feature stream");
  }
  MetricsReport report;

  const int64_t first = ref_stream.positions.front();
  const int64_t last = std::min<int64_t>(
      {ref_stream.positions.back(), static_cast<int64_t>(pred_wav.samples.size()) - 1,
       static_cast<int64_t>(ref_wav.samples.size()) - 1});
  if (last >= first) {
    const auto full_mask = VoicingMask(ref_stream, last + 1);
    Waveform a{{pred_wav.samples.begin() + first, pred_wav.samples.begin() + last + 1},
               pred_wav.fs};
    Waveform b{{ref_wav.samples.begin() + first, ref_wav.samples.begin() + last + 1},
               ref_wav.fs};
    std::vector<bool> mask(full_mask.begin() + first, full_mask.end());
    const auto rmse = RmseWaveform(a, b, mask);
    report.rmse_voiced = rmse.voiced;
    report.rmse_unvoiced = rmse.unvoiced;
    report.rmse = rmse.all;
  }

  const double fallback = ref_wav.fs / std::exp(ref_stream.segments.front().log_f0);
  const auto pairs = AlignGci(std::span<const int64_t>(pred_stream.positions),
                              std::span<const int64_t>(ref_stream.positions), fallback);
  MagnitudeSource source = cfg.lsd_source;
  if (pred_stream.mode != FeatureMode::kFull || ref_stream.mode != FeatureMode::kFull) {
    source = MagnitudeSource::kEnvelope;
  }
  FrameSet mag_p, mag_g, cep_p, cep_g, dyn_p, dyn_g;
  for (const auto& p : pairs) {
    if (!ref_stream.segments[p.ref].voiced) continue;
    mag_p.push_back(StreamLogMagnitude(pred_stream, p.pred, source));
    mag_g.push_back(StreamLogMagnitude(ref_stream, p.ref, source));
    cep_p.push_back(dsp::MelCepstrum(mag_p.back(), pred_stream.fft_size, pred_stream.fs,
                                     cfg.mel_bands, cfg.mcd_order));
    cep_g.push_back(dsp::MelCepstrum(mag_g.back(), ref_stream.fft_size, ref_stream.fs,
                                     cfg.mel_bands, cfg.mcd_order));
    dyn_p.push_back(pred_stream.segments[p.pred].phase_feature);
    dyn_g.push_back(ref_stream.segments[p.ref].phase_feature);
  }
  report.lsd = Lsd(mag_p, mag_g);
  report.mcd = Mcd(cep_p, cep_g, cfg.mcd_order);
  report.dpd = Dpd(dyn_p, dyn_g, cfg.dpd_wrap);
  if (!pairs.empty()) {
    const auto f0 = F0AndVuv(pred_stream, ref_stream, pairs);
    report.rmse_f0 = f0.rmse_f0;
    report.vuv_error_rate = f0.vuv_error_rate;
  }
  return report;
}

std::string ReportToText(const MetricsReport& r) {
  std::string out;
  char line[128];
  for (const auto& [name, m] : Entries(r)) {
    std::snprintf(line, sizeof(line), "%s %.9g %zu\n", name.c_str(), m.value, m.count);
    out += line;
  }
  return out;
}

std::string ReportToJson(const MetricsReport& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, m] : Entries(r)) {
    j[name] = {{"value", m.value}, {"count", m.count}};
  }
  return j.dump(2) + "\n";
}

}  // namespace glotwave
