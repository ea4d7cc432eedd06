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

// Glottal closure instant detection.
//
// Pipeline per utterance:
//   1. mean-based signal: Blackman-weighted moving average ~1.75 periods long
//   2. intervals: [local minimum, next local maximum] of that signal, inside
//      voiced regions of the reference contour
//   3. candidates: the M strongest LPC-residual peaks per interval
//   4. F0 grid: every candidate pair of adjacent intervals mapped to fs / gap
//   5. chain Viterbi: one candidate per interval minimizing the summed
//      deviation from the reference F0
//   6. merge with constant-rate marks in unvoiced regions

#ifndef GLOTWAVE_GCI_H_
#define GLOTWAVE_GCI_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "glotwave/signal_io.h"

namespace glotwave {

// Half-open sample range [begin, end).
struct SampleRange {
  int64_t begin = 0;
  int64_t end = 0;
};

// Closed sample interval [begin, end] in which one GCI is expected.
struct IntervalBounds {
  int64_t begin = 0;
  int64_t end = 0;
};

struct GciCandidate {
  int64_t position = 0;
  double amplitude = 0.0;
};

struct GciInterval {
  IntervalBounds bounds;
  // Sorted by descending amplitude.
  std::vector<GciCandidate> candidates;
};

struct GciCandidateSet {
  std::vector<GciInterval> intervals;
};

struct GciTrack {
  std::vector<int64_t> instants;
  std::vector<bool> voiced;

  size_t size() const { return instants.size(); }
};

enum class CostNorm { kAbsolute, kSquared };

enum class Traversal {
  kLeftToRight,
  // Recursions run from both chain ends toward the middle interval; the
  // decision is taken there and traced back outward.
  kMiddleOut,
};

struct DetectionConfig {
  int num_candidates = 5;
  double unvoiced_shift_s = 0.005;
  double f0_min = 50.0;
  double f0_max = 500.0;
  double candidate_min_separation_s = 0.0005;
  double boundary_min_gap_s = 0.001;
  CostNorm cost_norm = CostNorm::kAbsolute;
  Traversal traversal = Traversal::kMiddleOut;
  int residual_lpc_order = 0;  // 0 selects fs / 1000 + 2
  // Hz charged for a candidate with no residual relative to the strongest
  // one in its interval; 0 leaves the F0 cost alone.
  double amplitude_weight = 2.0;
  // Each search interval starts this fraction of the mean period before its
  // mean-based minimum.
  double interval_lead = 0.1;
  // Longest allowed gap between instants; 0 selects floor(fs / f0_min).
  int max_gap_samples = 0;
};

// y(n) = 1/(2T+1) sum_{m=-T}^{T} b(m) x(n+m), T = round(0.875 * period),
// b Blackman, zero padding at the edges.
std::vector<double> MeanBasedSignal(std::span<const double> x,
                                    int mean_period_samples);

std::vector<IntervalBounds> FindIntervals(
    std::span<const double> mean_signal,
    std::span<const SampleRange> voiced_regions);

// Per interval, up to M local residual peaks in descending amplitude with
// pairwise distance >= min_separation samples. An interval without any local
// peak falls back to its single largest sample.
GciCandidateSet SelectCandidates(std::span<const double> residual,
                                 std::span<const IntervalBounds> intervals,
                                 int M, int min_separation);

// f0[i][t][s] = fs / (g_{i+1,s} - g_{i,t}); nullopt where the gap is <= 0.
using F0Grid = std::vector<std::vector<std::vector<std::optional<double>>>>;
F0Grid CandidateF0Grid(const GciCandidateSet& c, int fs);

struct ViterbiResult {
  std::vector<int> choice;  // candidate index per interval
  double total_cost = 0.0;
};

// Cost of linking candidate `from` to candidate `to`: the deviation of
// fs / gap from the reference F0 at the midpoint of the gap.
// Returns +inf for a non-positive gap.
double TransitionCost(const GciCandidate& from, const GciCandidate& to,
                      const F0Contour& f0_ref, int fs, CostNorm norm);

// weight * (1 - a_k / a_0) with a_0 the strongest residual of the interval,
// clamped to [0, weight]. Breaks the near-ties that periodic secondary peaks
// create under the F0 cost alone.
double CandidatePenalty(const GciInterval& interval, int k, double weight);

// Sum of transition costs plus candidate penalties along `choice`.
double ChainCost(const GciCandidateSet& c, std::span<const int> choice,
                 const F0Contour& f0_ref, int fs, CostNorm norm,
                 double amplitude_weight = 0.0);

// Minimizes ChainCost exactly. Middle-out runs one recursion from each end
// and joins them at the middle interval.
ViterbiResult ViterbiSelect(const GciCandidateSet& c, const F0Contour& f0_ref,
                            int fs, CostNorm norm = CostNorm::kAbsolute,
                            Traversal traversal = Traversal::kMiddleOut,
                            double amplitude_weight = 0.0);

// Maximal runs of voiced frames mapped to samples by nearest-frame lookup.
std::vector<SampleRange> VoicedRegions(const F0Contour& f0_ref, int fs,
                                       int64_t num_samples);

GciTrack DetectGci(const Waveform& w, const F0Contour& f0_ref,
                   const DetectionConfig& cfg = {});

// Throws ValidationError if the track violates ordering, bounds or the
// voiced period range.
void ValidateGciTrack(const GciTrack& g, int64_t num_samples, int fs,
                      double f0_min, double f0_max);

}  // namespace glotwave

#endif  // GLOTWAVE_GCI_H_
