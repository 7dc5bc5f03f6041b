// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Test-only double-double (~32 significant digits) arithmetic and ascending
// Bessel series for real arguments. This is the independent high-precision
// oracle the unit tests compare the production evaluator against; it shares
// no code with core/src/complex_bessel.cpp.

#include <cassert>
#include <cmath>

namespace ddb {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd neg(dd a) { return {-a.hi, -a.lo}; }
inline dd sub(dd a, dd b) { return add(a, neg(b)); }

inline dd two_prod(double a, double b) {
  const double p = a * b;
  const double err = std::fma(a, b, -p);
  return {p, err};
}

inline dd mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd div(dd a, dd b) {
  const double q1 = a.hi / b.hi;
  dd r = sub(a, mul({q1, 0.0}, b));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul({q2, 0.0}, b));
  const double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return add(q, {q3, 0.0});
}

inline dd from(double x) { return {x, 0.0}; }

inline const dd kLn2{0.6931471805599453, 2.3190468138462996e-17};
inline const dd kGamma{0.5772156649015329, -4.942915152430645e-18};
inline const dd kTwoOverPi{0.6366197723675814, -3.935735335036497e-17};
inline const dd kPi{3.141592653589793, 1.2246467991473532e-16};

// ln(x) by range reduction to [0.75, 1.5] and the atanh series.
inline dd log(dd x) {
  assert(x.hi > 0.0);
  int k = 0;
  while (x.hi > 1.5) {
    x = div(x, from(2.0));
    ++k;
  }
  while (x.hi < 0.75) {
    x = mul(x, from(2.0));
    --k;
  }
  const dd t = div(sub(x, from(1.0)), add(x, from(1.0)));
  const dd t2 = mul(t, t);
  dd term = t;
  dd sum = t;
  for (int n = 3; n < 120; n += 2) {
    term = mul(term, t2);
    sum = add(sum, div(term, from(double(n))));
    if (std::abs(term.hi) < 1e-36 * std::abs(sum.hi)) break;
  }
  sum = mul(sum, from(2.0));
  return add(sum, mul(from(double(k)), kLn2));
}

// J_m(x) ascending series, real x, |x| <= ~25 within dd precision.
inline dd bessel_j(int m, double x) {
  const dd q = mul(from(0.25 * x), from(x));
  dd term = from(1.0);
  dd sum = from(1.0);
  for (int k = 1; k <= 120; ++k) {
    term = div(mul(term, neg(q)), from(double(k) * double(k + m)));
    sum = add(sum, term);
    if (std::abs(term.hi) < 1e-36 * std::max(1.0, std::abs(sum.hi))) break;
  }
  dd pref = from(1.0);
  for (int j = 1; j <= m; ++j) pref = div(mul(pref, from(0.5 * x)), from(double(j)));
  return mul(pref, sum);
}

// Y_0 and Y_1 from the log series (A&S 9.1.13 / 9.1.11).
inline dd bessel_y0(double x) {
  const dd q = mul(from(0.25 * x), from(x));
  dd c = from(1.0);
  dd s0 = from(0.0);
  dd harmonic = from(0.0);
  for (int k = 1; k <= 120; ++k) {
    c = div(mul(c, neg(q)), from(double(k) * double(k)));
    harmonic = add(harmonic, div(from(1.0), from(double(k))));
    s0 = sub(s0, mul(c, harmonic));
    if (std::abs(c.hi) < 1e-36) break;
  }
  const dd lg = add(log(from(0.5 * x)), kGamma);
  return mul(kTwoOverPi, add(mul(lg, bessel_j(0, x)), s0));
}

inline dd bessel_y1(double x) {
  const dd q = mul(from(0.25 * x), from(x));
  dd d = from(1.0);
  dd hk = from(0.0);
  dd hk1 = from(1.0);
  dd s1 = mul(d, add(hk, hk1));  // k = 0 term: H_0 + H_1
  for (int k = 1; k <= 120; ++k) {
    d = div(mul(d, neg(q)), from(double(k) * double(k + 1)));
    hk = add(hk, div(from(1.0), from(double(k))));
    hk1 = add(hk1, div(from(1.0), from(double(k + 1))));
    s1 = add(s1, mul(d, add(hk, hk1)));
    if (std::abs(d.hi) < 1e-36) break;
  }
  const dd lg = add(log(from(0.5 * x)), kGamma);
  dd y1 = mul(kTwoOverPi, mul(lg, bessel_j(1, x)));
  y1 = sub(y1, div(from(2.0), mul(kPi, from(x))));
  y1 = sub(y1, mul(div(from(0.5 * x), kPi), s1));
  return y1;
}

}  // namespace ddb
