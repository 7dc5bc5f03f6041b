// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epcav/complex_bessel.hpp"

namespace epcav::circle {

namespace {

using bessel::cyl_j;
using bessel::cyl_j_prime;
using bessel::hankel1;
using bessel::hankel1_prime;

// Winding number of the characteristic along a rectangle boundary, sampled
// adaptively so that consecutive phases differ by < pi/2.
class WindingCounter {
 public:
  WindingCounter(int m, double n_inside) : m_(m), n_(n_inside) {}

  double total_turns(cplx lo, cplx hi) {
    turns_ = 0.0;
    const cplx c1 = lo;
    const cplx c2 = {hi.real(), lo.imag()};
    const cplx c3 = hi;
    const cplx c4 = {lo.real(), hi.imag()};
    cplx f_prev = eval(c1);
    f_prev = walk(c1, c2, f_prev);
    f_prev = walk(c2, c3, f_prev);
    f_prev = walk(c3, c4, f_prev);
    (void)walk(c4, c1, f_prev);
    return turns_ / (2.0 * std::numbers::pi);
  }

 private:
  cplx eval(cplx k) const { return characteristic(m_, n_, k); }

  // straight segment from a to b; returns f(b). A large aliased phase step
  // or a strong magnitude swing both force subdivision; a minimum depth
  // guards against a full 2 pi wrap aliasing to ~0.
  cplx walk(cplx a, cplx b, cplx fa, int depth = 0) {
    const cplx fb = eval(b);
    const double d_arg = std::arg(fb / fa);
    const double ratio = std::abs(fb) / std::abs(fa);
    const bool resolved = std::abs(d_arg) < 0.5 * std::numbers::pi && ratio < 3.0 &&
                          ratio > 1.0 / 3.0 && depth >= kMinDepth;
    if (resolved || depth > 44) {
      turns_ += d_arg;
      return fb;
    }
    const cplx mid = 0.5 * (a + b);
    const cplx fm = walk(a, mid, fa, depth + 1);
    return walk(mid, b, fm, depth + 1);
  }

  static constexpr int kMinDepth = 5;  // >= 32 samples per edge

  int m_;
  double n_;
  double turns_ = 0.0;
};

}  // namespace

cplx characteristic(int m, double n_inside, cplx kR) {
  const cplx zi = n_inside * kR;
  return n_inside * cyl_j_prime(m, zi) * hankel1(m, kR) -
         cyl_j(m, zi) * hankel1_prime(m, kR);
}

std::vector<cplx> find_roots(int m, double n_inside, cplx lo, cplx hi, double tol) {
  if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
    throw std::invalid_argument("find_roots: empty window");

  std::vector<cplx> roots;
  WindingCounter counter(m, n_inside);

  auto polish = [&](cplx z0) -> cplx {
    cplx z1 = z0 + cplx(1e-6, -1e-6);
    cplx f0 = characteristic(m, n_inside, z0);
    cplx f1 = characteristic(m, n_inside, z1);
    for (int it = 0; it < 80; ++it) {
      if (f1 == f0) break;
      const cplx z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
      z0 = z1;
      f0 = f1;
      z1 = z2;
      f1 = characteristic(m, n_inside, z1);
      if (std::abs(z1 - z0) < tol) break;
    }
    return z1;
  };

  struct Box {
    cplx lo, hi;
  };
  std::vector<Box> stack{{lo, hi}};
  while (!stack.empty()) {
    const Box box = stack.back();
    stack.pop_back();
    const double w = box.hi.real() - box.lo.real();
    const double h = box.hi.imag() - box.lo.imag();
    const double turns = counter.total_turns(box.lo, box.hi);
    const int count = static_cast<int>(std::lround(turns));
    if (count <= 0) continue;
    if (count == 1 && w < 0.02 && h < 0.02) {
      const cplx root = polish(0.5 * (box.lo + box.hi));
      const bool inside = root.real() > lo.real() && root.real() < hi.real() &&
                          root.imag() > lo.imag() && root.imag() < hi.imag();
      const bool fresh =
          std::all_of(roots.begin(), roots.end(),
                      [&](const cplx& r) { return std::abs(r - root) > 100 * tol; });
      if (inside && fresh && std::abs(characteristic(m, n_inside, root)) < 1e-6) {
        roots.push_back(root);
      }
      continue;
    }
    // split along the longer side, nudging the cut if it lands on a root
    if (w >= h) {
      double cut = box.lo.real() + 0.5 * w;
      if (std::abs(characteristic(m, n_inside, {cut, box.lo.imag() + 0.5 * h})) < 1e-12)
        cut += 0.01 * w;
      stack.push_back({box.lo, {cut, box.hi.imag()}});
      stack.push_back({{cut, box.lo.imag()}, box.hi});
    } else {
      double cut = box.lo.imag() + 0.5 * h;
      if (std::abs(characteristic(m, n_inside, {box.lo.real() + 0.5 * w, cut})) < 1e-12)
        cut += 0.01 * h;
      stack.push_back({box.lo, {box.hi.real(), cut}});
      stack.push_back({{box.lo.real(), cut}, box.hi});
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
  return roots;
}

std::vector<CircleRoot> find_roots_all_m(int m_max, double n_inside, cplx lo, cplx hi,
                                         double tol) {
  std::vector<CircleRoot> all;
  for (int m = 0; m <= m_max; ++m) {
    for (const cplx& r : find_roots(m, n_inside, lo, hi, tol)) all.push_back({m, r});
  }
  std::sort(all.begin(), all.end(),
            [](const CircleRoot& a, const CircleRoot& b) { return a.kR.real() < b.kR.real(); });
  return all;
}

}  // namespace epcav::circle
