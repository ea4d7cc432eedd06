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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "glotwave/analysis.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"
#include "glotwave/feature_io.h"
#include "synthetic.h"

namespace glotwave {
namespace {

constexpr double kPi = std::numbers::pi;

double Rms(const std::vector<double>& a, const std::vector<double>& b, size_t from, size_t to) {
  double acc = 0;
  for (size_t i = from; i < to; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc / (to - from));
}

Segment WindowSegment(int left, int right, double value = 1.0) {
  Segment s;
  s.left_len = left;
  s.right_len = right;
  s.samples = dsp::AsymmetricHann(left, right);
  for (double& v : s.samples) v *= value;
  return s;
}

TEST(DecodePhaseTest, Examples) {
  const auto a = DecodePhase(std::vector<double>{0.5, 0.2, 0.3});
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_NEAR(a[1], 0.7, 1e-15);
  EXPECT_NEAR(a[2], 1.0, 1e-15);
  for (double v : DecodePhase(std::vector<double>(5, 0.0))) EXPECT_EQ(v, 0.0);
}

TEST(DecodePhaseTest, InvertsEncoding) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> theta(257);
    for (double& v : theta) v = dsp::WrapPhase(u(rng));
    const auto back = DecodePhase(EncodePhase(theta));
    for (size_t k = 0; k < theta.size(); ++k) {
      EXPECT_LE(std::abs(dsp::WrapPhase(back[k] - theta[k])), 1e-9);
    }
  }
}

TEST(FeaturesToSegmentTest, FullModeRoundTrip) {
  const auto w = testing::HarmonicTone(16000, 120.0, 10, 0.3);
  const GciTrack g{{1000, 1133, 1290, 1420}, {true, true, true, true}};
  const auto segs = ExtractSegments(w, g);
  FeatureStream stream;
  stream.fs = 16000;
  stream.fft_size = 512;
  for (const auto& seg : segs) {
    const auto f = SegmentToFeatures(seg, 16000, AnalysisConfig{});
    const auto back = FeaturesToSegment(f, {seg.center, {seg.left_len, seg.right_len}}, stream);
    ASSERT_EQ(back.samples.size(), seg.samples.size());
    EXPECT_LT(Rms(back.samples, seg.samples, 0, seg.samples.size()), 1e-3);
  }
}

TEST(FeaturesToSegmentTest, ParametricFlatImpulseKeepsEnergy) {
  Segment seg;
  seg.left_len = 100;
  seg.right_len = 100;
  seg.samples.assign(201, 0.0);
  seg.samples[100] = 0.5;
  seg.voiced = true;
  AnalysisConfig cfg;
  cfg.mode = FeatureMode::kParametric;
  const auto f = SegmentToFeatures(seg, 16000, cfg);
  FeatureStream stream;
  stream.fs = 16000;
  stream.fft_size = 512;
  stream.mode = FeatureMode::kParametric;
  const auto back = FeaturesToSegment(f, {1000, {100, 100}}, stream);
  double e_in = 0, e_out = 0;
  for (size_t i = 0; i < back.samples.size(); ++i) {
    e_in += seg.samples[i] * seg.samples[i];
    e_out += back.samples[i] * back.samples[i];
  }
  EXPECT_NEAR(e_out / e_in, 1.0, 0.05);
  // Impulse-like: the centre dominates.
  EXPECT_GT(back.samples[100] * back.samples[100], 0.9 * e_out);
}

TEST(FeaturesToSegmentTest, Errors) {
  FeatureStream stream;
  stream.fs = 16000;
  stream.fft_size = 512;
  SegmentFeatures f;
  f.voiced = true;
  f.log_f0 = std::log(100.0);
  for (int j = 1; j <= 40; ++j) f.lsp.push_back(j * kPi / 41);
  f.phase_feature.assign(257, 0.0);
  f.log_mag_full.assign(257, 0.0);
  EXPECT_NO_THROW(FeaturesToSegment(f, {500, {100, 100}}, stream));
  auto tampered = f;
  tampered.lsp[0] = 0.5;
  tampered.lsp[1] = 0.4;
  stream.mode = FeatureMode::kParametric;
  EXPECT_THROW(FeaturesToSegment(tampered, {500, {100, 100}}, stream), ValidationError);
  stream.mode = FeatureMode::kFull;
  auto short_k = f;
  short_k.phase_feature.resize(100);
  EXPECT_THROW(FeaturesToSegment(short_k, {500, {100, 100}}, stream), ValidationError);
}

TEST(OverlapAddTest, ColaInDoublyCoveredRegion) {
  std::vector<Segment> segs;
  std::vector<int64_t> pos;
  for (int i = 0; i < 6; ++i) {
    segs.push_back(WindowSegment(120, 120));
    pos.push_back(200 + 120 * i);
  }
  const int64_t total = pos.back() + 121;
  const auto env = OverlapEnvelope(segs, pos, total);
  for (int64_t n = pos.front(); n <= pos.back(); ++n) EXPECT_NEAR(env[n], 1.0, 1e-12) << n;
  const auto out = OverlapAdd(segs, pos, total);
  for (int64_t n = pos.front(); n <= pos.back(); ++n) EXPECT_NEAR(out[n], 1.0, 1e-12);
}

TEST(OverlapAddTest, ColaWithVaryingPeriods) {
  // Adjacent windows share each gap, so any increasing track is COLA inside.
  std::vector<int64_t> pos{100, 230, 350, 500, 610, 790};
  std::vector<Segment> segs;
  for (size_t i = 1; i + 1 < pos.size(); ++i) {
    segs.push_back(WindowSegment(static_cast<int>(pos[i] - pos[i - 1]),
                                 static_cast<int>(pos[i + 1] - pos[i])));
  }
  const std::vector<int64_t> centers(pos.begin() + 1, pos.end() - 1);
  const auto env = OverlapEnvelope(segs, centers, 800);
  for (int64_t n = centers.front(); n <= centers.back(); ++n) EXPECT_NEAR(env[n], 1.0, 1e-12);
}

TEST(OverlapAddTest, SingleSegmentAndEmpty) {
  const std::vector<Segment> one{WindowSegment(50, 50, 0.4)};
  const std::vector<int64_t> pos{60};
  const auto out = OverlapAdd(one, pos, 120, 1e-3);
  const auto win = dsp::AsymmetricHann(50, 50);
  for (int j = 0; j <= 100; ++j) {
    if (win[j] > 1e-3) {
      EXPECT_NEAR(out[10 + j], 0.4, 1e-12);
    } else {
      EXPECT_NEAR(out[10 + j], 0.4 * win[j] / 1e-3, 1e-12);
    }
  }
  const auto empty = OverlapAdd(std::vector<Segment>{}, std::vector<int64_t>{}, 50);
  ASSERT_EQ(empty.size(), 50u);
  for (double v : empty) EXPECT_EQ(v, 0.0);
}

TEST(OverlapAddTest, Errors) {
  const std::vector<Segment> two{WindowSegment(50, 50), WindowSegment(50, 50)};
  EXPECT_THROW(OverlapAdd(two, std::vector<int64_t>{100, 90}, 300), ValidationError);
  EXPECT_THROW(OverlapAdd(two, std::vector<int64_t>{100, 280}, 300), ValidationError);
  EXPECT_THROW(OverlapAdd(two, std::vector<int64_t>{20, 100}, 300), ValidationError);
  EXPECT_THROW(OverlapAdd(two, std::vector<int64_t>{100}, 300), ValidationError);
}

TEST(OverlapAddTest, EnvelopeBoundedOnRandomTracks) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ratio(1 / 1.3, 1.3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int64_t> inst{0};
    double period = 120;
    for (int i = 0; i < 40; ++i) {
      period = std::clamp(period * ratio(rng), 40.0, 250.0);
      inst.push_back(inst.back() + static_cast<int64_t>(std::lround(period)));
    }
    // Windows spanning two periods on each side, as a period-ratio stress.
    std::vector<Segment> segs;
    std::vector<int64_t> pos;
    for (size_t i = 1; i + 1 < inst.size(); ++i) {
      segs.push_back(WindowSegment(static_cast<int>(inst[i] - inst[i - 1]),
                                   static_cast<int>(inst[i + 1] - inst[i])));
      pos.push_back(inst[i]);
    }
    const auto env = OverlapEnvelope(segs, pos, inst.back() + 1);
    for (int64_t n = pos.front(); n <= pos.back(); ++n) {
      EXPECT_GE(env[n], 0.6);
      EXPECT_LE(env[n], 1.4);
    }
  }
}

class ToneRoundTrip : public ::testing::Test {
 protected:
  void SetUp() override {
    tone_ = testing::HarmonicTone(16000, 120.0, 10, 1.0);
    stream_ = Analyze(tone_, testing::ConstantF0(120.0, 1.0));
  }
  double VoicedRms(const Waveform& out) const {
    const size_t from = 134, to = std::min(tone_.samples.size(), out.samples.size()) - 134;
    return Rms(out.samples, tone_.samples, from, to);
  }
  Waveform tone_;
  FeatureStream stream_;
};

TEST_F(ToneRoundTrip, FullModeIsNearlyExact) {
  const auto r = Synthesize(stream_);
  EXPECT_EQ(r.scale, 1.0);
  EXPECT_EQ(static_cast<int64_t>(r.waveform.samples.size()),
            stream_.positions.back() + static_cast<int64_t>(std::lround(16000 / std::exp(stream_.segments.back().log_f0))) + 1);
  EXPECT_LT(VoicedRms(r.waveform), 0.01);
}

TEST_F(ToneRoundTrip, MinimumPhaseIsWorse) {
  const double full = VoicedRms(Synthesize(stream_).waveform);
  const auto mp = SynthesizeMinPhase(stream_);
  EXPECT_GE(VoicedRms(mp.waveform), 2 * full);
  // Same magnitudes, so the level stays within a factor of two.
  double e_in = 0, e_out = 0;
  for (size_t i = 134; i + 134 < std::min(tone_.samples.size(), mp.waveform.samples.size()); ++i) {
    e_in += tone_.samples[i] * tone_.samples[i];
    e_out += mp.waveform.samples[i] * mp.waveform.samples[i];
  }
  EXPECT_GT(std::sqrt(e_out / e_in), 0.5);
  EXPECT_LT(std::sqrt(e_out / e_in), 2.0);
}

TEST_F(ToneRoundTrip, Deterministic) {
  EXPECT_EQ(Synthesize(stream_).waveform.samples, Synthesize(stream_).waveform.samples);
  EXPECT_EQ(SynthesizeMinPhase(stream_).waveform.samples,
            SynthesizeMinPhase(stream_).waveform.samples);
}

TEST_F(ToneRoundTrip, SurvivesFeatureFile) {
  const auto parsed = ParseFeatureStream(SerializeFeatureStream(stream_));
  EXPECT_LT(VoicedRms(Synthesize(parsed).waveform), 0.01);
}

TEST_F(ToneRoundTrip, GeneratedPositionsFollowLogF0) {
  SynthesisConfig cfg;
  cfg.positions = PositionSource::kGenerated;
  const auto layout = LayoutSegments(stream_, cfg);
  ASSERT_EQ(layout.size(), stream_.segments.size());
  for (size_t i = 1; i < layout.size(); ++i) {
    const double period = layout[i].position - layout[i - 1].position;
    EXPECT_NEAR(period, 16000.0 / std::exp(stream_.segments[i - 1].log_f0), 1.0);
  }
  const auto r = Synthesize(stream_, cfg);
  EXPECT_FALSE(r.waveform.samples.empty());
  for (double v : r.waveform.samples) EXPECT_LE(std::abs(v), 1.0);
}

TEST(SynthesizeTest, ClippingIsNormalized) {
  auto stream = Analyze(testing::HarmonicTone(16000, 120.0, 10, 0.9),
                        testing::ConstantF0(120.0, 0.5));
  for (auto& f : stream.segments) {
    for (double& v : f.log_mag_full) v += std::log(4.0);
  }
  const auto r = Synthesize(stream);
  EXPECT_LT(r.scale, 1.0);
  double peak = 0;
  for (double v : r.waveform.samples) peak = std::max(peak, std::abs(v));
  EXPECT_NEAR(peak, 1.0, 1e-12);
}

TEST(SynthesizeTest, Errors) {
  FeatureStream empty;
  empty.fs = 16000;
  empty.fft_size = 512;
  EXPECT_THROW(Synthesize(empty), ValidationError);
  AnalysisConfig cfg;
  cfg.mode = FeatureMode::kParametric;
  const auto stream = Analyze(testing::HarmonicTone(16000, 120.0, 10, 0.3),
                              testing::ConstantF0(120.0, 0.3), cfg);
  EXPECT_THROW(SynthesizeMinPhase(stream), ConfigError);
  SynthesisConfig envelope;
  envelope.min_phase_from_envelope = true;
  EXPECT_NO_THROW(SynthesizeMinPhase(stream, envelope));
  EXPECT_NO_THROW(Synthesize(stream));
}

}  // namespace
}  // namespace glotwave
