// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file complex_bessel.hpp
///
/// Integer-order cylinder functions J_m, Y_m, H^(1)_m of complex argument.
///
/// Three evaluation regimes are combined:
///   - ascending power series (with the log series for Y) for |z| below a
///     fixed split point,
///   - the large-argument asymptotic expansions of H^(1), H^(2) above it,
///   - Miller backward recurrence (J) and forward recurrence (Y, H) in the
///     order direction.
///
/// Target accuracy is 1e-10 relative over |z| in [1e-3, 1e3] for the orders
/// this project uses (m <= ~60); see tests/unit/test_complex_bessel.cpp for
/// the reference-value validation.

#include <complex>
#include <vector>

namespace epcav::bessel {

using cplx = std::complex<double>;

/// Bessel function of the first kind, integer order m (may be negative).
cplx cyl_j(int m, cplx z);

/// Bessel function of the second kind. Requires z != 0.
cplx cyl_y(int m, cplx z);

/// Hankel function of the first kind, H^(1)_m = J_m + i Y_m. Requires z != 0.
cplx hankel1(int m, cplx z);

/// d/dz of J_m, Y_m, H^(1)_m.
cplx cyl_j_prime(int m, cplx z);
cplx cyl_y_prime(int m, cplx z);
cplx hankel1_prime(int m, cplx z);

/// H^(1)_0 and H^(1)_1 evaluated together; the hot path of the BEM kernels.
struct Hankel01 {
  cplx h0;
  cplx h1;
};
Hankel01 hankel1_01(cplx z);

/// J_0..J_mmax by backward recurrence, stable for every order at once.
std::vector<cplx> cyl_j_array(int mmax, cplx z);

/// H^(1)_0..H^(1)_mmax by forward recurrence (dominant solution direction).
std::vector<cplx> hankel1_array(int mmax, cplx z);

}  // namespace epcav::bessel
