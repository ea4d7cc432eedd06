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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "glotwave/dsp/f0_tracker.h"
#include "glotwave/dsp/fft.h"
#include "glotwave/dsp/lpc.h"
#include "glotwave/dsp/lsp.h"
#include "glotwave/dsp/mel_cepstrum.h"
#include "glotwave/dsp/phase.h"
#include "glotwave/dsp/spectrum.h"
#include "glotwave/dsp/window.h"
#include "glotwave/errors.h"
#include "synthetic.h"

namespace glotwave::dsp {
namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

std::vector<cd> DirectDft(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<cd> out(n / 2 + 1);
  for (size_t k = 0; k <= n / 2; ++k) {
    for (size_t i = 0; i < n; ++i) {
      out[k] += x[i] * std::polar(1.0, -2 * kPi * static_cast<double>(k * i) / n);
    }
  }
  return out;
}

// Step-up recursion from reflection coefficients; |k| < 1 gives a
// minimum-phase A(z).
LpcModel ModelFromReflections(const std::vector<double>& k) {
  std::vector<double> a{1.0};
  for (double ki : k) {
    std::vector<double> next(a.size() + 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) next[i] += a[i];
    for (size_t i = 0; i < a.size(); ++i) next[a.size() - i] += ki * a[i];
    a = next;
  }
  LpcModel m;
  m.order = static_cast<int>(k.size());
  m.a = a;
  return m;
}

LpcModel RandomStableModel(int order, std::mt19937_64& rng, double bound = 0.95) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<double> k(order);
  for (double& v : k) v = u(rng);
  return ModelFromReflections(k);
}

cd EvalPoly(const std::vector<double>& c, double w) {
  cd acc = 0;
  for (size_t i = 0; i < c.size(); ++i) acc += c[i] * std::polar(1.0, -w * static_cast<double>(i));
  return acc;
}

// Gaussian elimination with partial pivoting.
std::vector<double> DenseSolve(std::vector<std::vector<double>> m, std::vector<double> b) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    }
    std::swap(m[c], m[p]);
    std::swap(b[c], b[p]);
    for (size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

TEST(FftTest, MatchesDirectDft) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {8, 64, 512}) {
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    const auto fast = RealFft(n).Forward(x);
    const auto slow = DirectDft(x);
    for (int k = 0; k <= n / 2; ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-9) << n << " " << k;
  }
}

TEST(FftTest, InverseRoundTrip) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(256);
  for (double& v : x) v = u(rng);
  RealFft fft(256);
  const auto y = fft.Inverse(fft.Forward(x));
  for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 1e-12);
}

TEST(FftTest, RejectsNonPowerOfTwo) {
  EXPECT_FALSE(IsPowerOfTwo(12));
  EXPECT_TRUE(IsPowerOfTwo(64));
  EXPECT_THROW(RealFft(100), Error);
}

TEST(WindowTest, AsymmetricHannExamples) {
  const auto w22 = AsymmetricHann(2, 2);
  const std::vector<double> e22{0, 0.5, 1, 0.5, 0};
  ASSERT_EQ(w22.size(), e22.size());
  for (size_t i = 0; i < e22.size(); ++i) EXPECT_NEAR(w22[i], e22[i], 1e-15);
  EXPECT_EQ(AsymmetricHann(1, 1), (std::vector<double>{0, 1, 0}));
  const auto w23 = AsymmetricHann(2, 3);
  const std::vector<double> e23{0, 0.5, 1, 0.75, 0.25, 0};
  ASSERT_EQ(w23.size(), e23.size());
  for (size_t i = 0; i < e23.size(); ++i) EXPECT_NEAR(w23[i], e23[i], 1e-15);
  EXPECT_THROW(AsymmetricHann(0, 3), ValidationError);
}

TEST(WindowTest, AdjacentHalvesSumToOne) {
  // The falling half over a gap g and the next window's rising half over g.
  for (int g : {7, 80, 133}) {
    const auto a = AsymmetricHann(50, g);
    const auto b = AsymmetricHann(g, 60);
    for (int j = 0; j <= g; ++j) EXPECT_NEAR(a[50 + j] + b[j], 1.0, 1e-15);
  }
}

TEST(WindowTest, BlackmanShape) {
  const auto b = Blackman(4);
  ASSERT_EQ(b.size(), 9u);
  EXPECT_EQ(b.front(), 0.0);
  EXPECT_EQ(b.back(), 0.0);
  EXPECT_NEAR(b[4], 1.0, 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(b[i], b[8 - i], 1e-15);
}

TEST(PhaseTest, WrapExamples) {
  EXPECT_EQ(WrapPhase(0.0), 0.0);
  EXPECT_NEAR(WrapPhase(-6.0), -6.0 + 2 * kPi, 1e-15);
  EXPECT_NEAR(WrapPhase(-6.0), 0.2831853, 1e-7);
  EXPECT_EQ(WrapPhase(kPi), kPi);
  EXPECT_EQ(WrapPhase(-kPi), kPi);
  EXPECT_THROW(WrapPhase(std::nan("")), ValidationError);
  EXPECT_THROW(WrapPhase(INFINITY), ValidationError);
}

TEST(PhaseTest, WrapIsIdempotentAndPeriodic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    const double w = WrapPhase(x);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_EQ(WrapPhase(w), w);
    EXPECT_NEAR(WrapPhase(x + 2 * kPi), w, 1e-12);
  }
}

TEST(SpectrumTest, CenteredImpulseIsPureDelay) {
  const auto f = AnalyzeSpectrum(std::vector<double>{0, 0, 1, 0, 0}, 8);
  ASSERT_EQ(f.num_bins(), 5);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(f.log_mag[k], std::log(1.0 + kMagnitudeFloor), 1e-12);
    const double expected = k % 2 == 0 ? 0.0 : kPi;
    EXPECT_NEAR(std::abs(WrapPhase(f.phase[k] - expected)), 0.0, 1e-12) << k;
  }
}

TEST(SpectrumTest, ZerosHitTheFloor) {
  const auto f = AnalyzeSpectrum(std::vector<double>(6, 0.0), 8);
  for (int k = 0; k < 5; ++k) {
    EXPECT_DOUBLE_EQ(f.log_mag[k], std::log(kMagnitudeFloor));
    EXPECT_EQ(f.phase[k], 0.0);
  }
}

TEST(SpectrumTest, CosinePeaksAtItsBin) {
  std::vector<double> x(8);
  for (int i = 0; i < 8; ++i) x[i] = std::cos(2 * kPi * i / 8);
  const auto f = AnalyzeSpectrum(x, 8, 4);
  const auto oracle = DirectDft(x);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(std::exp(f.log_mag[k]), std::abs(oracle[k]) + kMagnitudeFloor, 1e-12);
    if (k != 1) EXPECT_LT(f.log_mag[k], f.log_mag[1]);
  }
}

TEST(SpectrumTest, RoundTripRecoversCenteredBuffer) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int len : {101, 267, 512}) {
    std::vector<double> seg(len);
    for (double& v : seg) v = u(rng);
    const int center = len / 3;
    const auto f = AnalyzeSpectrum(seg, 512, center);
    const auto buf = InverseSpectrum(f);
    const auto placed = PlaceCentered(seg, center, 512);
    double err = 0;
    for (int i = 0; i < 512; ++i) err += (buf[i] - placed[i]) * (buf[i] - placed[i]);
    EXPECT_LT(std::sqrt(err / 512), 1e-6);
    const auto back = ExtractCentered(buf, center, len - center - 1);
    for (int i = 0; i < len; ++i) EXPECT_NEAR(back[i], seg[i], 1e-9);
  }
}

TEST(SpectrumTest, RejectsLongSegment) {
  EXPECT_THROW(AnalyzeSpectrum(std::vector<double>(9, 1.0), 8), ValidationError);
}

TEST(SpectrumTest, InverseOfCenteredImpulsePhase) {
  SpectrumFrame f;
  f.fft_size = 16;
  f.log_mag.assign(9, 0.0);
  f.phase.resize(9);
  for (int k = 0; k < 9; ++k) f.phase[k] = WrapPhase(-kPi * k);
  const auto buf = InverseSpectrum(f);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(buf[i], i == 8 ? 1.0 : 0.0, 1e-12);
}

TEST(SpectrumTest, FlatMinimumPhaseIsImpulseAtAnchor) {
  const auto f = MinimumPhaseFrame(std::vector<double>(257, 0.0), 512);
  const auto buf = InverseSpectrum(f);
  for (int i = 0; i < 512; ++i) EXPECT_NEAR(buf[i], i == 256 ? 1.0 : 0.0, 1e-12);
  const auto g = MinimumPhaseFrame(std::vector<double>(257, 0.0), 512, 3);
  EXPECT_NEAR(InverseSpectrum(g)[259], 1.0, 1e-12);
}

TEST(SpectrumTest, MinimumPhaseMatchesKnownMinimumPhaseFilter) {
  // H(z) = (1 - 0.5 z^-1)(1 + 0.3 z^-1) is minimum phase; its phase must be
  // recovered from |H| alone.
  const std::vector<double> h{1.0, -0.2, -0.15};
  std::vector<double> padded(512, 0.0);
  for (size_t i = 0; i < h.size(); ++i) padded[i] = h[i];
  const auto oracle = DirectDft(padded);
  std::vector<double> log_mag(257);
  for (int k = 0; k < 257; ++k) log_mag[k] = std::log(std::abs(oracle[k]));
  const auto f = MinimumPhaseFrame(log_mag, 512);
  for (int k = 0; k < 257; ++k) {
    // Undo the move of the onset to the buffer centre.
    const double phase = WrapPhase(f.phase[k] + 2 * kPi * k * 256 / 512);
    EXPECT_NEAR(WrapPhase(phase - std::arg(oracle[k])), 0.0, 1e-9) << k;
  }
}

TEST(LpcTest, ClosedForms) {
  const auto m1 = LpcFromAutocorr(std::vector<double>{1.0, 0.9});
  ASSERT_EQ(m1.a.size(), 2u);
  EXPECT_DOUBLE_EQ(m1.a[0], 1.0);
  EXPECT_NEAR(m1.a[1], -0.9, 1e-15);
  EXPECT_NEAR(m1.gain, std::sqrt(0.19), 1e-15);
  const auto m2 = LpcFromAutocorr(std::vector<double>{1.0, 0.0, 0.0});
  EXPECT_EQ(m2.a, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(m2.gain, 1.0);
  EXPECT_THROW(LpcFromAutocorr(std::vector<double>{0.0, 0.1}), ValidationError);
}

TEST(LpcTest, MatchesNormalEquationSolve) {
  auto check = [](const std::vector<double>& r) {
    const int p = static_cast<int>(r.size()) - 1;
    std::vector<std::vector<double>> m(p, std::vector<double>(p));
    std::vector<double> b(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) m[i][j] = r[std::abs(i - j)];
      b[i] = -r[i + 1];
    }
    const auto x = DenseSolve(m, b);
    const auto model = LpcFromAutocorr(r);
    double err = r[0];
    for (int i = 0; i < p; ++i) {
      EXPECT_NEAR(model.a[i + 1], x[i], 1e-8);
      err += x[i] * r[i + 1];
    }
    EXPECT_NEAR(model.gain, std::sqrt(err), 1e-8);
  };
  check({1.0, 0.5, 0.25});
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 1 + trial % 10;
    const auto x = testing::WhiteNoise(64 + trial, 1.0, rng());
    check(Autocorrelation(x, p));
  }
}

TEST(LpcTest, ClampsUnstableRecursion) {
  // Not positive definite: |k1| > 1.
  const auto m = LpcFromAutocorr(std::vector<double>{1.0, 1.5});
  EXPECT_TRUE(m.clamped);
  EXPECT_NEAR(std::abs(m.a[1]), kMaxReflection, 1e-15);
}

TEST(LpcTest, ResidualOfWhiteNoiseKeepsEnergy) {
  Waveform w{testing::WhiteNoise(16000, 0.1, 5), 16000};
  const auto r = LpcResidual(w);
  ASSERT_EQ(r.size(), w.samples.size());
  double ex = 0, er = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    ex += w.samples[i] * w.samples[i];
    er += r[i] * r[i];
  }
  EXPECT_GT(er / ex, 0.8);
  EXPECT_LT(er / ex, 1.2);
}

TEST(LpcTest, ResidualOfArProcessRecoversExcitation) {
  const auto e = testing::WhiteNoise(16000, 0.01, 6);
  std::vector<double> x(e.size());
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = e[i] + (i >= 1 ? 1.3 * x[i - 1] : 0.0) - (i >= 2 ? 0.6 * x[i - 2] : 0.0);
  }
  LpcResidualOptions opt;
  opt.order = 2;
  const auto r = LpcResidual(Waveform{x, 16000}, opt);
  double sre = 0, srr = 0, see = 0;
  for (size_t i = 400; i < x.size() - 400; ++i) {
    sre += r[i] * e[i];
    srr += r[i] * r[i];
    see += e[i] * e[i];
  }
  EXPECT_GT(sre / std::sqrt(srr * see), 0.95);
}

TEST(LpcTest, ResidualEdgeCases) {
  const auto z = LpcResidual(Waveform{std::vector<double>(1000, 0.0), 16000});
  for (double v : z) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(LpcResidual(Waveform{std::vector<double>(100, 0.1), 16000}), ValidationError);
}

TEST(LpcTest, EnvelopeMatchesPointwiseEvaluation) {
  LpcModel flat{0, {1.0}, 1.0};
  for (double v : LpcEnvelope(flat, 5, 8)) EXPECT_DOUBLE_EQ(v, 0.0);
  flat.gain = std::exp(1.0);
  for (double v : LpcEnvelope(flat, 5, 8)) EXPECT_NEAR(v, 1.0, 1e-15);
  LpcModel m{1, {1.0, -0.9}, 1.0};
  const auto env = LpcEnvelope(m, 5, 8);
  for (int k = 0; k < 5; ++k) {
    const double w = 2 * kPi * k / 8;
    EXPECT_NEAR(env[k], -std::log(std::abs(1.0 - 0.9 * std::polar(1.0, -w))), 1e-12);
  }
}

TEST(LspTest, FlatModelClosedForm) {
  const auto l2 = LpcToLsp(LpcModel{2, {1.0, 0.0, 0.0}, 1.0});
  ASSERT_EQ(l2.frequencies.size(), 2u);
  EXPECT_NEAR(l2.frequencies[0], kPi / 3, 1e-10);
  EXPECT_NEAR(l2.frequencies[1], 2 * kPi / 3, 1e-10);
  const auto l4 = LpcToLsp(LpcModel{4, {1.0, 0, 0, 0, 0}, 1.0});
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(l4.frequencies[i], (i + 1) * kPi / 5, 1e-10);
  const auto a = LspToLpc(LspVector{{kPi / 3, 2 * kPi / 3}});
  ASSERT_EQ(a.a.size(), 3u);
  EXPECT_NEAR(a.a[0], 1.0, 1e-15);
  EXPECT_NEAR(a.a[1], 0.0, 1e-12);
  EXPECT_NEAR(a.a[2], 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.gain, 1.0);
}

TEST(LspTest, OrderTwoRoundTrip) {
  const LpcModel m{2, {1.0, -0.9, 0.2}, 1.0};
  const auto back = LspToLpc(LpcToLsp(m));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back.a[i], m.a[i], 1e-9);
}

TEST(LspTest, RejectsBadInput) {
  EXPECT_THROW(LspToLpc(LspVector{{0.5, 0.4}}), ValidationError);
  EXPECT_THROW(ValidateLsp(LspVector{{0.0, 1.0}}), ValidationError);
  EXPECT_THROW(ValidateLsp(LspVector{{1.0, kPi}}), ValidationError);
  // Roots outside the unit circle.
  EXPECT_THROW(LpcToLsp(LpcModel{2, {1.0, 0.0, 1.5}, 1.0}), ValidationError);
}

TEST(LspTest, RandomOrder40RoundTripAndInterlacing) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = RandomStableModel(40, rng);
    const auto lsp = LpcToLsp(m);
    ASSERT_EQ(lsp.frequencies.size(), 40u);
    for (size_t i = 0; i < 40; ++i) {
      EXPECT_GT(lsp.frequencies[i], 0.0);
      EXPECT_LT(lsp.frequencies[i], kPi);
      if (i > 0) EXPECT_GT(lsp.frequencies[i], lsp.frequencies[i - 1]);
    }
    // P uses +, Q uses - on the reversed polynomial; evaluate both directly.
    std::vector<double> p(42, 0.0), q(42, 0.0);
    for (int i = 0; i <= 40; ++i) {
      p[i] += m.a[i];
      q[i] += m.a[i];
      p[41 - i] += m.a[i];
      q[41 - i] -= m.a[i];
    }
    for (size_t i = 0; i < 40; ++i) {
      const auto& poly = i % 2 == 0 ? p : q;
      EXPECT_LT(std::abs(EvalPoly(poly, lsp.frequencies[i])), 1e-6) << trial << " " << i;
    }
    const auto back = LspToLpc(lsp);
    double err = 0;
    for (int i = 0; i <= 40; ++i) err = std::max(err, std::abs(back.a[i] - m.a[i]));
    EXPECT_LT(err, 1e-6);
  }
}

TEST(LspTest, ReconstructionIsMinimumPhase) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = LspToLpc(LpcToLsp(RandomStableModel(10, rng)));
    // Step-down recursion: all reflection coefficients inside (-1, 1).
    std::vector<double> a = m.a;
    for (int p = 10; p >= 1; --p) {
      const double k = a[p];
      ASSERT_LT(std::abs(k), 1.0);
      std::vector<double> prev(p);
      for (int i = 0; i < p; ++i) prev[i] = (a[i] - k * a[p - i]) / (1 - k * k);
      a = prev;
    }
  }
}

// Filterbank and DCT written from the definitions, in Hz rather than mel.
std::vector<double> MelCepstrumOracle(const std::vector<double>& log_mag, int fft, int fs,
                                      int bands, int order) {
  auto mel = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
  auto hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  std::vector<double> edges(bands + 2);
  for (int i = 0; i < bands + 2; ++i) edges[i] = hz(mel(fs / 2.0) * i / (bands + 1));
  std::vector<double> energy(bands);
  for (int b = 0; b < bands; ++b) {
    double wsum = 0, acc = 0;
    for (size_t k = 0; k < log_mag.size(); ++k) {
      const double f = static_cast<double>(k) * fs / fft;
      double w = 0;
      if (f > edges[b] && f <= edges[b + 1]) {
        w = (mel(f) - mel(edges[b])) / (mel(edges[b + 1]) - mel(edges[b]));
      } else if (f > edges[b + 1] && f < edges[b + 2]) {
        w = (mel(edges[b + 2]) - mel(f)) / (mel(edges[b + 2]) - mel(edges[b + 1]));
      }
      wsum += w;
      acc += w * std::exp(2 * log_mag[k]);
    }
    energy[b] = std::log(acc / wsum);
  }
  std::vector<double> c(order + 1, 0.0);
  for (int q = 0; q <= order; ++q) {
    for (int b = 0; b < bands; ++b) {
      c[q] += energy[b] * std::cos(kPi * q * (2 * b + 1) / (2.0 * bands));
    }
    c[q] *= q == 0 ? 1.0 / std::sqrt(bands) : std::sqrt(2.0 / bands);
  }
  return c;
}

TEST(MelCepstrumTest, ConstantSpectrum) {
  const auto c = MelCepstrum(std::vector<double>(257, 0.0), 512, 16000);
  ASSERT_EQ(c.size(), 25u);
  for (size_t k = 1; k < c.size(); ++k) EXPECT_NEAR(c[k], 0.0, 1e-9);
  const auto c1 = MelCepstrum(std::vector<double>(257, 1.0), 512, 16000);
  // log energy rises by 2 in every band.
  EXPECT_NEAR(c1[0] - c[0], 2.0 * std::sqrt(40.0), 1e-9);
}

TEST(MelCepstrumTest, LevelShiftOnlyMovesC0) {
  std::vector<double> lm(257);
  for (int k = 0; k < 257; ++k) lm[k] = std::sin(k * 0.05) - 0.002 * k;
  auto shifted = lm;
  for (double& v : shifted) v += 1.0;
  const auto a = MelCepstrum(lm, 512, 16000);
  const auto b = MelCepstrum(shifted, 512, 16000);
  EXPECT_GT(std::abs(a[0] - b[0]), 1.0);
  for (size_t k = 1; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
}

TEST(MelCepstrumTest, MatchesOracleOnFormantEnvelope) {
  LpcModel m{2, {1.0, -2 * 0.97 * std::cos(2 * kPi * 700 / 16000), 0.97 * 0.97}, 0.1};
  const auto lm = LpcEnvelope(m, 257, 512);
  const auto c = MelCepstrum(lm, 512, 16000);
  const auto o = MelCepstrumOracle(lm, 512, 16000, 40, 24);
  for (size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(c[k], o[k], 1e-9) << k;
}

TEST(MelCepstrumTest, Errors) {
  EXPECT_THROW(MelCepstrum(std::vector<double>(100, 0.0), 512, 16000), ValidationError);
  EXPECT_THROW(MelCepstrum(std::vector<double>(257, 0.0), 512, 16000, 10, 10), ConfigError);
  // Too many bands for a coarse FFT leaves some bands empty.
  EXPECT_THROW(MelFilterbank(33, 64, 16000, 40), ConfigError);
}

TEST(F0TrackerTest, SineAt120Hz) {
  Waveform w{std::vector<double>(16000), 16000};
  for (int i = 0; i < 16000; ++i) w.samples[i] = 0.5 * std::sin(2 * kPi * 120 * i / 16000.0);
  const auto f = EstimateF0Autocorr(w);
  int voiced = 0;
  for (size_t j = 10; j + 10 < f.values.size(); ++j) {
    ASSERT_GT(f.values[j], 0.0) << j;
    EXPECT_NEAR(f.values[j], 120.0, 2.0);
    ++voiced;
  }
  EXPECT_GT(voiced, 150);
}

TEST(F0TrackerTest, NoiseIsMostlyUnvoiced) {
  const auto f = EstimateF0Autocorr(Waveform{testing::WhiteNoise(16000, 0.1, 9), 16000});
  int unvoiced = 0;
  for (double v : f.values) unvoiced += v == 0.0;
  EXPECT_GE(unvoiced, 0.9 * f.values.size());
}

TEST(F0TrackerTest, SilenceIsUnvoiced) {
  const auto f = EstimateF0Autocorr(Waveform{std::vector<double>(8000, 0.0), 16000});
  for (double v : f.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(EstimateF0Autocorr(Waveform{{}, 16000}), ValidationError);
}

TEST(F0TrackerTest, TracksGlottalPulses) {
  const auto pt = testing::GlottalPulseTrain(16000, 150.0, 1.0);
  const auto f = EstimateF0Autocorr(pt.wave);
  for (size_t j = 10; j + 10 < f.values.size(); ++j) EXPECT_NEAR(f.values[j], 150.0, 3.0);
}

}  // namespace
}  // namespace glotwave::dsp
