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

#include "glotwave/gci.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glotwave/dsp/lpc.h"
#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"

namespace glotwave {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool IsLocalMin(std::span<const double> y, int64_t n) {
  return y[n] < y[n - 1] && y[n] <= y[n + 1];
}

bool IsLocalMax(std::span<const double> y, int64_t n) {
  return y[n] > y[n - 1] && y[n] >= y[n + 1];
}

bool IsResidualPeak(std::span<const double> r, int64_t n) {
  const auto size = static_cast<int64_t>(r.size());
  if (size == 1) return true;
  if (n == 0) return r[0] > r[1];
  if (n == size - 1) return r[n] > r[n - 1];
  return r[n] > r[n - 1] && r[n] >= r[n + 1];
}

// Reference F0 for a time point. Falls back to the nearest voiced frame when
// the nearest frame is unvoiced.
double ReferenceF0(const F0Contour& f0_ref, double time_s) {
  const double v = f0_ref.ValueAt(time_s);
  if (v > 0.0 || f0_ref.values.empty()) return v;
  const auto size = static_cast<int64_t>(f0_ref.values.size());
  const auto center = std::clamp<int64_t>(
      static_cast<int64_t>(std::llround(time_s / f0_ref.frame_shift_s)), 0, size - 1);
  for (int64_t d = 1; d < size; ++d) {
    if (center - d >= 0 && f0_ref.values[center - d] > 0) return f0_ref.values[center - d];
    if (center + d < size && f0_ref.values[center + d] > 0) return f0_ref.values[center + d];
  }
  return 0.0;
}

double Skewness(std::span<const double> x, std::span<const SampleRange> regions) {
  double n = 0, s1 = 0;
  for (const auto& r : regions) {
    for (int64_t i = r.begin; i < r.end; ++i) {
      s1 += x[i];
      n += 1;
    }
  }
  if (n < 3) return 0.0;
  const double mean = s1 / n;
  double m2 = 0, m3 = 0;
  for (const auto& r : regions) {
    for (int64_t i = r.begin; i < r.end; ++i) {
      const double d = x[i] - mean;
      m2 += d * d;
      m3 += d * d * d;
    }
  }
  m2 /= n;
  m3 /= n;
  return m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

struct Mark {
  int64_t position;
  bool voiced;
  int region;  // index of the voiced region, -1 for unvoiced marks
};

}  // namespace

std::vector<double> MeanBasedSignal(std::span<const double> x,
                                    int mean_period_samples) {
  if (mean_period_samples < 4) {
    throw ValidationError("mean period must be at least 4 samples, got " +
                          std::to_string(mean_period_samples));
  }
  const int half = static_cast<int>(std::lround(0.875 * mean_period_samples));
  const auto len = static_cast<int64_t>(2 * half + 1);
  if (len > static_cast<int64_t>(x.size())) {
    throw ValidationError("mean-based window of " + std::to_string(len) +
                          " samples is longer than the signal (" +
                          std::to_string(x.size()) + ")");
  }
  const std::vector<double> b = dsp::Blackman(half);
  const auto n = static_cast<int64_t>(x.size());
  std::vector<double> y(n, 0.0);
  const double norm = 1.0 / static_cast<double>(len);
  for (int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const int64_t lo = std::max<int64_t>(-half, -i);
    const int64_t hi = std::min<int64_t>(half, n - 1 - i);
    for (int64_t m = lo; m <= hi; ++m) acc += b[m + half] * x[i + m];
    y[i] = acc * norm;
  }
  return y;
}

std::vector<IntervalBounds> FindIntervals(
    std::span<const double> mean_signal,
    std::span<const SampleRange> voiced_regions) {
  std::vector<IntervalBounds> out;
  const auto size = static_cast<int64_t>(mean_signal.size());
  for (const auto& region : voiced_regions) {
    const int64_t first = std::max<int64_t>(region.begin, 1);
    const int64_t last = std::min<int64_t>(region.end, size) - 2;
    int64_t n = first;
    while (n <= last) {
      if (!IsLocalMin(mean_signal, n)) {
        ++n;
        continue;
      }
      int64_t m = n + 1;
      while (m <= last && !IsLocalMax(mean_signal, m)) ++m;
      if (m > last) break;
      out.push_back({n, m});
      n = m + 1;
    }
  }
  return out;
}

GciCandidateSet SelectCandidates(std::span<const double> residual,
                                 std::span<const IntervalBounds> intervals,
                                 int M, int min_separation) {
  if (M < 1) throw ConfigError("number of GCI candidates must be >= 1");
  GciCandidateSet set;
  const auto size = static_cast<int64_t>(residual.size());
  for (const auto& iv : intervals) {
    if (iv.begin < 0 || iv.end >= size || iv.end < iv.begin) {
      throw ValidationError("interval [" + std::to_string(iv.begin) + ", " +
                            std::to_string(iv.end) + "] outside residual");
    }
    std::vector<GciCandidate> peaks;
    for (int64_t n = iv.begin; n <= iv.end; ++n) {
      if (IsResidualPeak(residual, n)) peaks.push_back({n, residual[n]});
    }
    if (peaks.empty()) {
      int64_t best = iv.begin;
      for (int64_t n = iv.begin + 1; n <= iv.end; ++n) {
        if (residual[n] > residual[best]) best = n;
      }
      peaks.push_back({best, residual[best]});
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const GciCandidate& a, const GciCandidate& b) {
                       return a.amplitude > b.amplitude;
                     });
    GciInterval out{iv, {}};
    for (const auto& p : peaks) {
      if (static_cast<int>(out.candidates.size()) == M) break;
      const bool admissible = std::all_of(
          out.candidates.begin(), out.candidates.end(), [&](const GciCandidate& q) {
            return std::abs(q.position - p.position) >= min_separation;
          });
      if (admissible) out.candidates.push_back(p);
    }
    set.intervals.push_back(std::move(out));
  }
  return set;
}

F0Grid CandidateF0Grid(const GciCandidateSet& c, int fs) {
  F0Grid grid;
  for (size_t i = 0; i + 1 < c.intervals.size(); ++i) {
    const auto& from = c.intervals[i].candidates;
    const auto& to = c.intervals[i + 1].candidates;
    std::vector<std::vector<std::optional<double>>> table(
        from.size(), std::vector<std::optional<double>>(to.size()));
    for (size_t t = 0; t < from.size(); ++t) {
      for (size_t s = 0; s < to.size(); ++s) {
        const int64_t gap = to[s].position - from[t].position;
        if (gap > 0) table[t][s] = static_cast<double>(fs) / gap;
      }
    }
    grid.push_back(std::move(table));
  }
  return grid;
}

double TransitionCost(const GciCandidate& from, const GciCandidate& to,
                      const F0Contour& f0_ref, int fs, CostNorm norm) {
  const int64_t gap = to.position - from.position;
  if (gap <= 0) return kInf;
  const double f0 = static_cast<double>(fs) / gap;
  const double mid_s = 0.5 * static_cast<double>(from.position + to.position) / fs;
  const double d = ReferenceF0(f0_ref, mid_s) - f0;
  return norm == CostNorm::kSquared ? d * d : std::abs(d);
}

double CandidatePenalty(const GciInterval& interval, int k, double weight) {
  if (weight == 0.0) return 0.0;
  const double top = interval.candidates.front().amplitude;
  if (!(top > 0.0)) return 0.0;
  const double ratio = std::clamp(interval.candidates[k].amplitude / top, 0.0, 1.0);
  return weight * (1.0 - ratio);
}

double ChainCost(const GciCandidateSet& c, std::span<const int> choice,
                 const F0Contour& f0_ref, int fs, CostNorm norm,
                 double amplitude_weight) {
  double total = 0.0;
  for (size_t i = 0; i < c.intervals.size(); ++i) {
    total += CandidatePenalty(c.intervals[i], choice[i], amplitude_weight);
  }
  for (size_t i = 0; i + 1 < c.intervals.size(); ++i) {
    total += TransitionCost(c.intervals[i].candidates[choice[i]],
                            c.intervals[i + 1].candidates[choice[i + 1]], f0_ref,
                            fs, norm);
  }
  return total;
}

ViterbiResult ViterbiSelect(const GciCandidateSet& c, const F0Contour& f0_ref,
                            int fs, CostNorm norm, Traversal traversal,
                            double amplitude_weight) {
  const auto& iv = c.intervals;
  const int n = static_cast<int>(iv.size());
  ViterbiResult result;
  if (n == 0) return result;
  for (int i = 0; i < n; ++i) {
    if (iv[i].candidates.empty()) {
      throw ValidationError("interval " + std::to_string(i) + " has no candidates");
    }
  }
  auto cost = [&](int i, int t, int s) {
    return TransitionCost(iv[i].candidates[t], iv[i + 1].candidates[s], f0_ref,
                          fs, norm);
  };
  auto penalty = [&](int i, size_t k) {
    return CandidatePenalty(iv[i], static_cast<int>(k), amplitude_weight);
  };
  auto infeasible = [](int i) {
    return PipelineError("GCI detection: no valid candidate transition between "
                         "intervals " + std::to_string(i) + " and " +
                         std::to_string(i + 1));
  };
  auto argmin = [](const std::vector<double>& v) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(v.size()); ++k) {
      if (v[k] < v[best]) best = k;
    }
    return best;
  };

  const int middle = traversal == Traversal::kMiddleOut ? (n - 1) / 2 : n - 1;

  // Forward recursion over intervals 0..middle; ties keep the lower
  // (stronger) candidate index.
  std::vector<std::vector<double>> fwd(middle + 1);
  std::vector<std::vector<int>> back(middle + 1);
  fwd[0].resize(iv[0].candidates.size());
  for (size_t k = 0; k < fwd[0].size(); ++k) fwd[0][k] = penalty(0, k);
  back[0].assign(iv[0].candidates.size(), -1);
  for (int i = 0; i < middle; ++i) {
    const size_t next = iv[i + 1].candidates.size();
    fwd[i + 1].assign(next, kInf);
    back[i + 1].assign(next, -1);
    for (size_t s = 0; s < next; ++s) {
      for (size_t t = 0; t < fwd[i].size(); ++t) {
        const double v =
            fwd[i][t] + cost(i, static_cast<int>(t), static_cast<int>(s)) + penalty(i + 1, s);
        if (v < fwd[i + 1][s]) {
          fwd[i + 1][s] = v;
          back[i + 1][s] = static_cast<int>(t);
        }
      }
    }
    if (*std::min_element(fwd[i + 1].begin(), fwd[i + 1].end()) == kInf) {
      throw infeasible(i);
    }
  }

  // Backward recursion over intervals n-1..middle.
  std::vector<std::vector<double>> bwd(n);
  std::vector<std::vector<int>> ahead(n);
  bwd[n - 1].assign(iv[n - 1].candidates.size(), 0.0);
  ahead[n - 1].assign(iv[n - 1].candidates.size(), -1);
  for (int i = n - 2; i >= middle; --i) {
    const size_t here = iv[i].candidates.size();
    bwd[i].assign(here, kInf);
    ahead[i].assign(here, -1);
    for (size_t t = 0; t < here; ++t) {
      for (size_t s = 0; s < bwd[i + 1].size(); ++s) {
        const double v = cost(i, static_cast<int>(t), static_cast<int>(s)) +
                         penalty(i + 1, s) + bwd[i + 1][s];
        if (v < bwd[i][t]) {
          bwd[i][t] = v;
          ahead[i][t] = static_cast<int>(s);
        }
      }
    }
    if (*std::min_element(bwd[i].begin(), bwd[i].end()) == kInf) {
      throw infeasible(i);
    }
  }

  std::vector<double> joint(fwd[middle].size());
  for (size_t u = 0; u < joint.size(); ++u) joint[u] = fwd[middle][u] + bwd[middle][u];
  const int anchor = argmin(joint);
  if (joint[anchor] == kInf) throw infeasible(std::max(middle - 1, 0));

  result.choice.assign(n, 0);
  result.choice[middle] = anchor;
  for (int i = middle; i > 0; --i) result.choice[i - 1] = back[i][result.choice[i]];
  for (int i = middle; i < n - 1; ++i) result.choice[i + 1] = ahead[i][result.choice[i]];
  result.total_cost = ChainCost(c, result.choice, f0_ref, fs, norm, amplitude_weight);
  return result;
}

std::vector<SampleRange> VoicedRegions(const F0Contour& f0_ref, int fs,
                                       int64_t num_samples) {
  std::vector<SampleRange> regions;
  int64_t start = -1;
  for (int64_t n = 0; n < num_samples; ++n) {
    const bool voiced = f0_ref.ValueAt(static_cast<double>(n) / fs) > 0.0;
    if (voiced && start < 0) start = n;
    if (!voiced && start >= 0) {
      regions.push_back({start, n});
      start = -1;
    }
  }
  if (start >= 0) regions.push_back({start, num_samples});
  return regions;
}

GciTrack DetectGci(const Waveform& w, const F0Contour& f0_ref,
                   const DetectionConfig& cfg) {
  ValidateWaveform(w);
  if (f0_ref.values.empty()) throw ValidationError("reference F0 contour is empty");
  if (!(cfg.f0_min > 0 && cfg.f0_min < cfg.f0_max)) {
    throw ConfigError("detection needs 0 < f0_min < f0_max");
  }
  const auto n = static_cast<int64_t>(w.samples.size());
  const int fs = w.fs;
  const int64_t step = std::max<int64_t>(1, std::llround(cfg.unvoiced_shift_s * fs));
  const auto regions = VoicedRegions(f0_ref, fs, n);

  std::vector<Mark> marks;
  std::vector<bool> region_used(regions.size(), false);
  if (!regions.empty()) {
    double sum = 0;
    int count = 0;
    for (double v : f0_ref.values) {
      if (v > 0) {
        sum += v;
        ++count;
      }
    }
    const int period = static_cast<int>(std::lround(fs / (sum / count)));

    dsp::LpcResidualOptions lpc;
    lpc.order = cfg.residual_lpc_order;
    std::vector<double> residual = dsp::LpcResidual(w, lpc);
    std::vector<double> x = w.samples;
    // Work in the orientation where GCIs are positive residual peaks; an
    // inverted recording flips both signals.
    if (Skewness(residual, regions) < 0) {
      for (double& v : residual) v = -v;
      for (double& v : x) v = -v;
    }
    const auto mean_signal = MeanBasedSignal(x, period);
    const int separation = std::max(
        1, static_cast<int>(std::lround(cfg.candidate_min_separation_s * fs)));
    const auto lead = static_cast<int64_t>(std::lround(cfg.interval_lead * period));

    for (size_t r = 0; r < regions.size(); ++r) {
      auto intervals =
          FindIntervals(mean_signal, std::span<const SampleRange>(&regions[r], 1));
      if (intervals.empty()) continue;
      // In this orientation closures sit at the mean-based minimum, give or
      // take a few samples, so each search starts slightly before it.
      for (size_t i = 0; i < intervals.size(); ++i) {
        const int64_t floor_at = i > 0 ? intervals[i - 1].end + 1 : regions[r].begin;
        intervals[i].begin = std::max(intervals[i].begin - lead, floor_at);
      }
      const auto set =
          SelectCandidates(residual, intervals, cfg.num_candidates, separation);
      const auto best = ViterbiSelect(set, f0_ref, fs, cfg.cost_norm, cfg.traversal,
                                      cfg.amplitude_weight);
      for (size_t i = 0; i < set.intervals.size(); ++i) {
        marks.push_back({set.intervals[i].candidates[best.choice[i]].position, true,
                         static_cast<int>(r)});
      }
      region_used[r] = true;
    }
  }

  // Constant-rate marks for everything not covered by a processed region.
  std::vector<SampleRange> unvoiced;
  int64_t cursor = 0;
  for (size_t r = 0; r < regions.size(); ++r) {
    if (!region_used[r]) continue;
    if (regions[r].begin > cursor) unvoiced.push_back({cursor, regions[r].begin});
    cursor = regions[r].end;
  }
  const bool ends_voiced = cursor >= n;
  if (cursor < n) unvoiced.push_back({cursor, n});
  const int64_t min_gap = std::max<int64_t>(1, std::llround(cfg.boundary_min_gap_s * fs));
  std::vector<int64_t> voiced_positions;
  for (const auto& m : marks) voiced_positions.push_back(m.position);
  std::sort(voiced_positions.begin(), voiced_positions.end());
  // A signal that starts or ends inside a voiced region still gets marks out
  // to its edges, at the unvoiced rate. The tail is stepped back from the
  // last sample so the final segment reaches the end.
  if (!voiced_positions.empty() && (unvoiced.empty() || unvoiced.front().begin > 0)) {
    unvoiced.insert(unvoiced.begin(), {0, voiced_positions.front()});
  }
  auto add_unvoiced = [&](int64_t p) {
    auto it = std::lower_bound(voiced_positions.begin(), voiced_positions.end(), p);
    const bool near_next = it != voiced_positions.end() && *it - p < min_gap;
    const bool near_prev = it != voiced_positions.begin() && p - *(it - 1) < min_gap;
    if (!near_next && !near_prev) marks.push_back({p, false, -1});
  };
  for (const auto& u : unvoiced) {
    for (int64_t p = u.begin; p < u.end; p += step) add_unvoiced(p);
  }
  if (!voiced_positions.empty() && ends_voiced) {
    for (int64_t p = n - 1; p > voiced_positions.back(); p -= step) add_unvoiced(p);
  }
  std::sort(marks.begin(), marks.end(),
            [](const Mark& a, const Mark& b) { return a.position < b.position; });

  // Enforce the track invariants: strictly increasing, voiced neighbours at
  // least one shortest period apart, no gap longer than one longest period.
  const double shortest = fs / cfg.f0_max;
  auto longest = static_cast<int64_t>(
      std::max<double>(std::floor(fs / cfg.f0_min), static_cast<double>(step)));
  if (cfg.max_gap_samples > 0) longest = std::min<int64_t>(longest, cfg.max_gap_samples);
  std::vector<Mark> kept;
  for (const auto& m : marks) {
    if (!kept.empty()) {
      const Mark& prev = kept.back();
      const int64_t gap = m.position - prev.position;
      if (gap <= 0) continue;
      if (prev.voiced && m.voiced && gap < shortest) continue;
      if (gap > longest) {
        const bool voiced = prev.voiced && m.voiced && prev.region == m.region;
        const int64_t pieces = (gap + longest - 1) / longest;
        for (int64_t k = 1; k < pieces; ++k) {
          const int64_t p = prev.position + (gap * k + pieces / 2) / pieces;
          kept.push_back({p, voiced, voiced ? m.region : -1});
        }
      }
    }
    kept.push_back(m);
  }

  GciTrack track;
  for (const auto& m : kept) {
    track.instants.push_back(m.position);
    track.voiced.push_back(m.voiced);
  }
  return track;
}

void ValidateGciTrack(const GciTrack& g, int64_t num_samples, int fs,
                      double f0_min, double f0_max) {
  if (g.instants.size() != g.voiced.size()) {
    throw ValidationError("GCI track: instant and flag counts differ");
  }
  const double lo = std::floor(fs / f0_max);
  const double hi = std::ceil(fs / f0_min);
  for (size_t i = 0; i < g.instants.size(); ++i) {
    if (g.instants[i] < 0 || g.instants[i] >= num_samples) {
      throw ValidationError("GCI " + std::to_string(i) + " outside the waveform");
    }
    if (i == 0) continue;
    const int64_t gap = g.instants[i] - g.instants[i - 1];
    if (gap <= 0) {
      throw ValidationError("GCI track not strictly increasing at " + std::to_string(i));
    }
    if (g.voiced[i] && g.voiced[i - 1] && (gap < lo || gap > hi)) {
      throw ValidationError("voiced GCI gap " + std::to_string(gap) + " at " +
                            std::to_string(i) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    }
  }
}

}  // namespace glotwave
