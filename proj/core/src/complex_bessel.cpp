// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/complex_bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace epcav::bessel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Crossover between the ascending series and the asymptotic expansions.
// At 12.8 the series loses ~e^{12.8}*eps ~ 4e-11 to cancellation and the
// optimally truncated asymptotic tail sits near 8e-12, so both sides stay
// inside the 1e-10 budget.
constexpr double kZSplit = 12.8;

constexpr int kSeriesMax = 64;

// Harmonic numbers H_0..H_64 for the Y log series.
struct HarmonicTable {
  double h[kSeriesMax + 2];
  constexpr HarmonicTable() : h{} {
    h[0] = 0.0;
    for (int k = 1; k <= kSeriesMax + 1; ++k) h[k] = h[k - 1] + 1.0 / k;
  }
};
constexpr HarmonicTable kHarmonic{};

double harmonic(int n) {
  if (n <= kSeriesMax + 1) return kHarmonic.h[n];
  double h = kHarmonic.h[kSeriesMax + 1];
  for (int k = kSeriesMax + 2; k <= n; ++k) h += 1.0 / k;
  return h;
}

inline bool small_arg(const cplx& z) { return std::abs(z) <= kZSplit; }

// J_0, J_1, Y_0, Y_1 by the ascending series (A&S 9.1.10-9.1.13).
struct SmallZ01 {
  cplx j0, j1, y0, y1;
};

SmallZ01 series_01(const cplx& z) {
  const cplx mq = -0.25 * z * z;
  cplx c = 1.0;                 // (-q)^k / (k!)^2
  cplx d = 1.0;                 // (-q)^k / (k! (k+1)!)
  cplx j0 = 1.0, j1s = 1.0;     // j1s = sum for J_1 / (z/2)
  cplx s0 = 0.0;                // sum for Y_0 correction
  cplx s1 = kHarmonic.h[1];     // sum for Y_1 correction, k=0 term H_0+H_1
  for (int k = 1; k <= kSeriesMax; ++k) {
    c *= mq * (1.0 / double(k * k));
    d *= mq * (1.0 / double(k * (k + 1)));
    j0 += c;
    j1s += d;
    s0 -= c * kHarmonic.h[k];
    s1 += d * (kHarmonic.h[k] + kHarmonic.h[k + 1]);
    if (std::norm(c) + std::norm(d) < 1e-36 * (std::norm(j0) + std::norm(j1s)))
      break;
  }
  const cplx half_z = 0.5 * z;
  const cplx j1 = half_z * j1s;
  const cplx lg = std::log(half_z) + kEulerGamma;
  SmallZ01 r;
  r.j0 = j0;
  r.j1 = j1;
  r.y0 = (2.0 / kPi) * (lg * j0 + s0);
  r.y1 = (2.0 / kPi) * lg * j1 - 2.0 / (kPi * z) - (half_z / kPi) * s1;
  return r;
}

// Y_m (m >= 1) by the ascending log series (A&S 9.1.11). Unlike upward
// recurrence from Y_0, Y_1 this stays accurate through the transition zone
// m ~ |z| for strongly complex argument: the (z/2)^{-m} finite sum carries
// the dominant part directly instead of reconstructing it from cancellation.
cplx series_ym(int m, const cplx& z) {
  const cplx q = 0.25 * z * z;
  const cplx half_z = 0.5 * z;

  // finite part: -(1/pi) (z/2)^{-m} sum_{k=0}^{m-1} (m-k-1)!/k! q^k
  cplx fin = 0.0;
  {
    // term_0 = (m-1)!; scale by (z/2)^{-m} progressively to dodge overflow.
    cplx term = 1.0;
    for (int j = 1; j < m; ++j) term *= double(j);
    for (int j = 0; j < m; ++j) term /= half_z;
    for (int k = 0; k < m; ++k) {
      fin += term;
      // t_{k+1}/t_k = q / ((k+1)(m-k-1)), last iteration unused
      if (k + 1 < m) term *= q / (double(k + 1) * double(m - k - 1));
    }
  }

  // infinite part: -(1/pi) (z/2)^m sum_k (psi(k+1)+psi(m+k+1)) (-q)^k / (k!(m+k)!)
  cplx inf_sum = 0.0;
  {
    cplx pref = 1.0;  // (z/2)^m / m!
    for (int j = 1; j <= m; ++j) pref *= half_z / double(j);
    double h_k = 0.0;
    double h_mk = harmonic(m);
    cplx term = pref;
    for (int k = 0; k <= kSeriesMax; ++k) {
      inf_sum += term * (h_k + h_mk - 2.0 * kEulerGamma);
      h_k += 1.0 / double(k + 1);
      h_mk += 1.0 / double(m + k + 1);
      term *= -q / (double(k + 1) * double(m + k + 1));
      if (std::abs(term) < 1e-18 * std::abs(inf_sum) && k > 2) break;
    }
  }

  return (-fin - inf_sum + 2.0 * std::log(half_z) * cyl_j(m, z)) / kPi;
}

// J_m by its own ascending series; adequate for any m when |z| <= kZSplit.
cplx series_jm(int m, const cplx& z) {
  const cplx q = 0.25 * z * z;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k <= kSeriesMax; ++k) {
    term *= -q / double(k * (k + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  // (z/2)^m / m! computed with running scaling to dodge overflow for large m.
  cplx pref = 1.0;
  const cplx half_z = 0.5 * z;
  for (int j = 1; j <= m; ++j) pref *= half_z / double(j);
  return pref * sum;
}

// Large-argument expansion of H^(1)_m and H^(2)_m (DLMF 10.17.5-10.17.6):
//   H^(1,2)_m(z) ~ sqrt(2/(pi z)) exp(+-i(z - m pi/2 - pi/4))
//                    sum_k (+-i)^k a_k(m) / z^k,
//   a_k(m) = prod_{j=1..k} (4 m^2 - (2j-1)^2) / (8 k).
cplx hankel_asymptotic(int kind, int m, const cplx& z) {
  const cplx rot_over_8z = (kind == 1 ? cplx(0.0, 0.125) : cplx(0.0, -0.125)) / z;
  cplx term = 1.0;
  cplx sum = 1.0;
  double prev = std::numeric_limits<double>::max();
  const double mm4 = 4.0 * double(m) * double(m);
  for (int k = 1; k <= 96; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= rot_over_8z * ((mm4 - odd * odd) / double(k));
    const double mag = std::norm(term);
    if (mag >= prev) break;  // divergence onset: truncate at the minimum
    sum += term;
    prev = mag;
    if (mag < 1e-34 * std::norm(sum)) break;
  }
  const double chi_re = -(0.5 * m + 0.25) * kPi;
  const cplx phase = (kind == 1) ? std::exp(cplx(0.0, 1.0) * z + cplx(0.0, chi_re))
                                 : std::exp(cplx(0.0, -1.0) * z - cplx(0.0, chi_re));
  return std::sqrt(2.0 / (kPi * z)) * phase * sum;
}

void require_nonzero(const cplx& z, const char* who) {
  if (z == cplx(0.0, 0.0)) throw std::domain_error(std::string(who) + ": z = 0");
}

// J_0, J_1, Y_0, Y_1 anchors for |z| > kZSplit. The asymptotic expansions
// degrade near the Stokes line arg z = +-pi, so for Re z < 0 evaluate at -z
// and connect with (DLMF 10.11)
//   J_m(-z) = (-1)^m J_m(z),
//   Y_m(-z) = (-1)^m (Y_m(z) +- 2i J_m(z)),
// the sign following the rotation direction (+ for Im z >= 0).
SmallZ01 jy01_large(const cplx& z) {
  const bool flip = z.real() < 0.0;
  const cplx w = flip ? -z : z;
  const cplx h1_0 = hankel_asymptotic(1, 0, w), h2_0 = hankel_asymptotic(2, 0, w);
  const cplx h1_1 = hankel_asymptotic(1, 1, w), h2_1 = hankel_asymptotic(2, 1, w);
  SmallZ01 r;
  r.j0 = 0.5 * (h1_0 + h2_0);
  r.j1 = 0.5 * (h1_1 + h2_1);
  r.y0 = (h1_0 - h2_0) / cplx(0.0, 2.0);
  r.y1 = (h1_1 - h2_1) / cplx(0.0, 2.0);
  if (flip) {
    const cplx rot = (z.imag() >= 0.0) ? cplx(0.0, 2.0) : cplx(0.0, -2.0);
    r.y0 = r.y0 + rot * r.j0;
    r.y1 = -(r.y1 + rot * r.j1);
    r.j1 = -r.j1;
  }
  return r;
}

SmallZ01 jy01(const cplx& z) { return small_arg(z) ? series_01(z) : jy01_large(z); }

// Threshold on |Im z| between the classical three-term recurrences and the
// Wronskian-anchored chain below. Within the band the recurrences lose at
// most e^{2*2} * 1e-13 ~ 5e-12; outside it every zero of J_m (all real for
// integer m) is far away, so the chain divisions are safe.
constexpr double kAxisBand = 2.0;

// H^(1)_0..H^(1)_mmax via the cross-product identity
//   J_{m+1}(z) H_m(z) - J_m(z) H_{m+1}(z) = 2i/(pi z),
// anchored at an accurate H_0 and an accurate J array. Unlike the three-term
// recurrence this never reconstructs a recessive branch from cancellation,
// so it stays accurate through the transition zone m ~ |z| for complex z.
std::vector<cplx> chain_h1(int mmax, const cplx& z, const std::vector<cplx>& js,
                           const cplx& h0) {
  std::vector<cplx> h(static_cast<size_t>(mmax) + 1);
  const cplx w = cplx(0.0, 2.0) / (kPi * z);
  h[0] = h0;
  for (int m = 0; m < mmax; ++m) h[m + 1] = (js[m + 1] * h[m] - w) / js[m];
  return h;
}

// Backward (Miller) recurrence for J_0..J_mmax, |z| > kZSplit. The raw
// downward pass recovers the minimal solution up to one overall factor; the
// factor is fixed by matching the asymptotic J_0 or J_1, whichever is larger
// (their zeros interlace, so one of them is always well away from zero).
// Self-validated by re-running from a higher start index.
std::vector<cplx> miller_j(int mmax, const cplx& z) {
  const double az = std::abs(z);
  const SmallZ01 anchor = jy01_large(z);
  const int ref_m = std::abs(anchor.j0) >= std::abs(anchor.j1) ? 0 : 1;
  const cplx ref = ref_m == 0 ? anchor.j0 : anchor.j1;

  auto run = [&](int start) {
    std::vector<cplx> f(static_cast<size_t>(start) + 2, cplx(0.0));
    std::vector<cplx> out(static_cast<size_t>(mmax) + 1);
    f[start + 1] = 0.0;
    f[start] = 1e-280;
    const cplx two_over_z = 2.0 / z;
    for (int k = start; k >= 1; --k) {
      f[k - 1] = double(k) * two_over_z * f[k] - f[k + 1];
      if (std::abs(f[k - 1]) > 1e250) {
        // Only ratios matter; shrink everything computed so far.
        const double s = 1e-250;
        for (int j = k - 1; j <= start + 1; ++j) f[j] *= s;
      }
    }
    const cplx scale = ref / f[ref_m];
    for (int m = 0; m <= mmax; ++m) out[m] = f[m] * scale;
    return out;
  };

  int start = std::max(mmax, int(az)) + 24 + int(1.5 * std::sqrt(std::max(az, double(mmax))));
  std::vector<cplx> a = run(start);
  for (int round = 0; round < 4; ++round) {
    const int bigger = start + start / 2 + 16;
    std::vector<cplx> b = run(bigger);
    double rel = 0.0;
    for (int m = 0; m <= mmax; ++m) {
      const double scale = std::max(std::abs(b[m]), 1e-300);
      rel = std::max(rel, std::abs(a[m] - b[m]) / scale);
    }
    a.swap(b);
    start = bigger;
    if (rel < 1e-13) break;
  }
  return a;
}

}  // namespace

Hankel01 hankel1_01(cplx z) {
  require_nonzero(z, "hankel1_01");
  if (small_arg(z)) {
    const SmallZ01 s = series_01(z);
    return {s.j0 + cplx(0.0, 1.0) * s.y0, s.j1 + cplx(0.0, 1.0) * s.y1};
  }
  if (z.real() >= 0.0) return {hankel_asymptotic(1, 0, z), hankel_asymptotic(1, 1, z)};
  // Stokes-line avoidance: connect through -z (DLMF 10.11.5 and friends).
  const cplx w = -z;
  const cplx h1_0 = hankel_asymptotic(1, 0, w), h2_0 = hankel_asymptotic(2, 0, w);
  const cplx h1_1 = hankel_asymptotic(1, 1, w), h2_1 = hankel_asymptotic(2, 1, w);
  if (z.imag() >= 0.0) return {-h2_0, h2_1};
  return {2.0 * h1_0 + h2_0, -(2.0 * h1_1 + h2_1)};
}

cplx hankel1(int m, cplx z) {
  require_nonzero(z, "hankel1");
  if (m < 0) {
    const cplx v = hankel1(-m, z);
    return (-m) % 2 == 0 ? v : -v;  // H^(1)_{-m} = (-1)^m H^(1)_m
  }
  return hankel1_array(m, z)[m];
}

std::vector<cplx> hankel1_array(int mmax, cplx z) {
  require_nonzero(z, "hankel1_array");
  std::vector<cplx> out(static_cast<size_t>(mmax) + 1);
  const Hankel01 h01 = hankel1_01(z);
  out[0] = h01.h0;
  if (mmax >= 1) out[1] = h01.h1;
  if (mmax < 2) return out;
  if (std::abs(z.imag()) > kAxisBand) return chain_h1(mmax, z, cyl_j_array(mmax, z), h01.h0);
  const cplx two_over_z = 2.0 / z;
  for (int k = 1; k < mmax; ++k) out[k + 1] = double(k) * two_over_z * out[k] - out[k - 1];
  return out;
}

cplx cyl_j(int m, cplx z) {
  if (m < 0) {
    const cplx v = cyl_j(-m, z);
    return (-m) % 2 == 0 ? v : -v;
  }
  if (z == cplx(0.0, 0.0)) return m == 0 ? cplx(1.0) : cplx(0.0);
  if (small_arg(z)) {
    if (m == 0) return series_01(z).j0;
    if (m == 1) return series_01(z).j1;
    return series_jm(m, z);
  }
  if (m == 0) return jy01_large(z).j0;
  if (m == 1) return jy01_large(z).j1;
  return miller_j(m, z)[m];
}

std::vector<cplx> cyl_j_array(int mmax, cplx z) {
  require_nonzero(z, "cyl_j_array");
  if (small_arg(z)) {
    std::vector<cplx> out(static_cast<size_t>(mmax) + 1);
    const SmallZ01 s = series_01(z);
    out[0] = s.j0;
    if (mmax >= 1) out[1] = s.j1;
    for (int m = 2; m <= mmax; ++m) out[m] = series_jm(m, z);
    return out;
  }
  return miller_j(mmax, z);
}

cplx cyl_y(int m, cplx z) {
  require_nonzero(z, "cyl_y");
  if (m < 0) {
    const cplx v = cyl_y(-m, z);
    return (-m) % 2 == 0 ? v : -v;
  }
  if (m >= 2) {
    if (std::abs(z.imag()) > kAxisBand) {
      const auto js = cyl_j_array(m, z);
      const auto h = chain_h1(m, z, js, hankel1_01(z).h0);
      return (h[m] - js[m]) / cplx(0.0, 1.0);
    }
    if (small_arg(z)) return series_ym(m, z);
    // near the real axis, large |z|: classical upward recurrence
    const SmallZ01 anchor = jy01_large(z);
    cplx ym1 = anchor.y0;
    cplx y = anchor.y1;
    const cplx two_over_z = 2.0 / z;
    for (int k = 1; k < m; ++k) {
      const cplx next = double(k) * two_over_z * y - ym1;
      ym1 = y;
      y = next;
    }
    return y;
  }
  const SmallZ01 s = jy01(z);
  return m == 0 ? s.y0 : s.y1;
}

cplx cyl_j_prime(int m, cplx z) {
  if (m == 0) return -cyl_j(1, z);
  return 0.5 * (cyl_j(m - 1, z) - cyl_j(m + 1, z));
}

cplx cyl_y_prime(int m, cplx z) {
  if (m == 0) return -cyl_y(1, z);
  return 0.5 * (cyl_y(m - 1, z) - cyl_y(m + 1, z));
}

cplx hankel1_prime(int m, cplx z) {
  if (m == 0) return -hankel1(1, z);
  return 0.5 * (hankel1(m - 1, z) - hankel1(m + 1, z));
}

}  // namespace epcav::bessel
