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

#include "glotwave/dsp/lsp.h"

#include <cmath>
#include <numbers>
#include <quadmath.h>
#include <string>

#include "glotwave/errors.h"

namespace glotwave::dsp {
namespace {

using std::numbers::pi;

// Symmetric polynomial of even degree p, stored by its first p/2 + 1
// coefficients. On the unit circle it equals exp(-j w p/2) times the real
// function  c[p/2] + 2 sum_{k=1}^{p/2} c[p/2 - k] cos(k w).
inline double Cos(double x) { return std::cos(x); }
inline __float128 Cos(__float128 x) { return cosq(x); }

template <typename T>
class SymmetricPoly {
 public:
  explicit SymmetricPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

  // Evaluated as a Chebyshev series in x = cos(w) (Clenshaw recurrence).
  T Evaluate(T omega) const {
    const int half = static_cast<int>(c_.size()) - 1;
    const T x = Cos(omega);
    T b1 = 0, b2 = 0;
    for (int k = half; k >= 1; --k) {
      const T coeff = 2 * c_[half - k];
      const T b0 = coeff + 2 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c_[half] + x * b1 - b2;
  }

 private:
  std::vector<T> c_;
};

// Reduced sum and difference polynomials, with the trivial roots at z = -1
// and z = 1 divided out. Only the first order/2 + 1 terms are kept; the rest
// mirror them.
template <typename T>
void SplitPolynomials(const LpcModel& m, std::vector<T>* p_red,
                      std::vector<T>* q_red) {
  const int p = m.order;
  std::vector<T> pp(p + 2, 0), qq(p + 2, 0);
  for (int i = 0; i <= p + 1; ++i) {
    const T ai = i <= p ? T(m.a[i]) : T(0);
    const T ar = (p + 1 - i) <= p ? T(m.a[p + 1 - i]) : T(0);
    pp[i] = ai + ar;
    qq[i] = ai - ar;
  }
  // Synthetic division by (1 + z^-1) and (1 - z^-1).
  p_red->assign(p + 1, 0);
  q_red->assign(p + 1, 0);
  (*p_red)[0] = pp[0];
  (*q_red)[0] = qq[0];
  for (int i = 1; i <= p; ++i) {
    (*p_red)[i] = pp[i] - (*p_red)[i - 1];
    (*q_red)[i] = qq[i] + (*q_red)[i - 1];
  }
  p_red->resize(p / 2 + 1);
  q_red->resize(p / 2 + 1);
}

template <typename T>
T Bisect(const SymmetricPoly<T>& f, T lo, T hi, T tolerance) {
  T flo = f.Evaluate(lo);
  while (hi - lo > tolerance) {
    const T mid = (lo + hi) / 2;
    const T fm = f.Evaluate(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  // One secant step inside the final bracket.
  const T fh = f.Evaluate(hi);
  if (flo != fh) {
    const T x = lo - flo * (hi - lo) / (fh - flo);
    if (x > lo && x < hi) return x;
  }
  return (lo + hi) / 2;
}

template <typename T>
std::vector<T> ScanRoots(const SymmetricPoly<T>& f, int points, T tolerance) {
  const T kPi = T(pi);
  std::vector<T> roots;
  T prev_w = 0;
  T prev_v = f.Evaluate(prev_w);
  for (int i = 1; i <= points; ++i) {
    const T w = kPi * i / points;
    const T v = f.Evaluate(w);
    if (v == 0 && i < points) {
      roots.push_back(w);
    } else if ((v < 0) != (prev_v < 0) && prev_v != 0) {
      roots.push_back(Bisect(f, prev_w, w, tolerance));
    }
    prev_w = w;
    prev_v = v;
  }
  return roots;
}

// Roots of P and Q merged as p1 < q1 < p2 < ..., or empty when the counts are
// wrong or the interlacing is broken by more than `slack`.
template <typename T>
std::vector<T> InterlacedRoots(const LpcModel& m, int points, T tolerance, T slack) {
  std::vector<T> p_red, q_red;
  SplitPolynomials(m, &p_red, &q_red);
  const auto rp = ScanRoots(SymmetricPoly<T>(p_red), points, tolerance);
  const auto rq = ScanRoots(SymmetricPoly<T>(q_red), points, tolerance);
  const size_t half = m.order / 2;
  if (rp.size() != half || rq.size() != half) return {};
  std::vector<T> out;
  out.reserve(m.order);
  for (size_t i = 0; i < half; ++i) {
    out.push_back(rp[i]);
    out.push_back(rq[i]);
  }
  for (size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1] - slack)) return {};
  }
  return out;
}

}  // namespace

LspVector LpcToLsp(const LpcModel& m) {
  if (m.order < 2 || m.order % 2 != 0 ||
      static_cast<int>(m.a.size()) != m.order + 1) {
    throw ValidationError("LSP conversion needs an even order >= 2, got " +
                          std::to_string(m.order));
  }
  // Closely spaced pairs can hide a sign change between grid points; retry
  // on a finer grid before declaring the model non-minimum-phase.
  for (int points = kLspScanPoints; points <= kLspScanPoints * 64; points *= 4) {
    const auto roots = InterlacedRoots<double>(m, points, kLspTolerance, 0.0);
    if (!roots.empty()) return LspVector{roots};
  }
  // A pole within ~1e-15 of the unit circle puts a P root and a Q root closer
  // than double arithmetic can separate. Redo the search in quad precision on
  // the same coefficients.
  for (int points = kLspScanPoints; points <= kLspScanPoints * 4; points *= 4) {
    const auto roots = InterlacedRoots<__float128>(m, points, __float128(1e-26),
                                                   __float128(kLspQuadSlack));
    if (roots.empty()) continue;
    LspVector v;
    v.frequencies.reserve(roots.size());
    for (const __float128 r : roots) {
      double f = static_cast<double>(r);
      // Pairs closer than one ulp are pulled apart to keep the vector valid.
      if (!v.frequencies.empty() && f <= v.frequencies.back()) {
        f = std::nextafter(v.frequencies.back(), pi);
      }
      v.frequencies.push_back(f);
    }
    if (v.frequencies.front() > 0.0 && v.frequencies.back() < pi) return v;
  }
  throw ValidationError(
      "LPC model is not minimum phase: LSP roots do not interlace on the unit "
      "circle");
}

LpcModel LspToLpc(const LspVector& v) {
  ValidateLsp(v);
  const int p = static_cast<int>(v.frequencies.size());
  // The product expansion cancels heavily at order 40; accumulate in quad.
  using Quad = __float128;
  std::vector<Quad> pp{1}, qq{1};
  auto multiply = [](std::vector<Quad>& poly, double omega) {
    const Quad c = -2 * cosq(Quad(omega));
    std::vector<Quad> out(poly.size() + 2, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      out[i] += poly[i];
      out[i + 1] += c * poly[i];
      out[i + 2] += poly[i];
    }
    poly = std::move(out);
  };
  for (int i = 0; i < p; ++i) multiply(i % 2 == 0 ? pp : qq, v.frequencies[i]);

  LpcModel m;
  m.order = p;
  m.a.assign(p + 1, 0.0);
  // P = P'(1 + z^-1), Q = Q'(1 - z^-1); the z^-(p+1) terms cancel in the sum.
  for (int i = 0; i <= p; ++i) {
    const Quad pi_term = pp[i] + (i > 0 ? pp[i - 1] : 0);
    const Quad qi_term = qq[i] - (i > 0 ? qq[i - 1] : 0);
    m.a[i] = static_cast<double>((pi_term + qi_term) / 2);
  }
  m.a[0] = 1.0;
  m.gain = 1.0;
  return m;
}

void ValidateLsp(const LspVector& v) {
  const auto& f = v.frequencies;
  if (f.empty() || f.size() % 2 != 0) {
    throw ValidationError("LSP vector needs an even, non-zero length, got " +
                          std::to_string(f.size()));
  }
  for (size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0 && f[i] < pi)) {
      throw ValidationError("LSP frequency " + std::to_string(i) +
                            " outside (0, pi)");
    }
    if (i > 0 && !(f[i] > f[i - 1])) {
      throw ValidationError("LSP frequencies not strictly increasing at index " +
                            std::to_string(i));
    }
  }
}

LspVector FlatLsp(int order) {
  LspVector v;
  for (int k = 1; k <= order; ++k) v.frequencies.push_back(k * pi / (order + 1));
  return v;
}

}  // namespace glotwave::dsp
