// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file circle.hpp
///
/// Analytic TM resonances of the circular dielectric cavity (chi = 0 limit
/// of the ellipse family). With interior index n and dimensionless size
/// parameter kR, matching the field and its normal derivative across the
/// boundary gives the characteristic equation per angular momentum m:
///
///     n J'_m(n kR) H^(1)_m(kR) - J_m(n kR) H^(1)'_m(kR) = 0.
///
/// Roots are the exact circle resonances and serve as the oracle for the
/// boundary-element solver.

#include <complex>
#include <vector>

namespace epcav::circle {

using cplx = std::complex<double>;

/// Characteristic residual; continuous in kR for kR != 0.
cplx characteristic(int m, double n_inside, cplx kR);

/// All simple roots of characteristic(m, n, .) inside the open rectangle
/// (lo.re, hi.re) x (lo.im, hi.im), located by argument-principle counting
/// over subdivided rectangles and polished by the secant method to |step| <
/// tol. Roots are returned sorted by real part.
std::vector<cplx> find_roots(int m, double n_inside, cplx lo, cplx hi, double tol = 1e-12);

struct CircleRoot {
  int m;
  cplx kR;
};

/// find_roots over m = 0..m_max, flattened and sorted by real part.
std::vector<CircleRoot> find_roots_all_m(int m_max, double n_inside, cplx lo, cplx hi,
                                         double tol = 1e-12);

}  // namespace epcav::circle
