// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file two_level.hpp
///
/// Exact analytics for the 2x2 symmetric non-Hermitian matrix
///
///     [ eps1  omega ]
///     [ omega eps2  ]
///
/// with complex diagonal energies and real coupling omega. Eigenvalues are
/// E+- = (eps1+eps2)/2 +- Z with Z = sqrt((eps1-eps2)^2/4 + omega^2); Z = 0
/// is an exceptional point where eigenvalues and eigenvectors coalesce.
/// Used both as a model in its own right and as the closed-form oracle for
/// the cavity sweep's EP behavior.

#include <array>
#include <complex>
#include <functional>

namespace epcav::two_level {

using cplx = std::complex<double>;

struct TwoLevelParams {
  cplx eps1;
  cplx eps2;
  double omega = 0.0;  // real coupling by construction
};

enum class Regime { Strong, Weak, EP };

struct EigenPair {
  cplx e_plus;
  cplx e_minus;
  cplx z;  // discriminant, e_plus - e_minus = 2 z
  Regime regime;
};

/// Principal square root with the tie broken toward Im >= 0 on Re = 0.
cplx principal_sqrt(cplx c);

/// Both eigenvalues; total function.
EigenPair eigenvalues(const TwoLevelParams& p);

/// Strong if 2*omega > |Im eps1 - Im eps2|, Weak if smaller, EP if |Z| < tol.
Regime classify_regime(const TwoLevelParams& p, double tol);

struct EigenVectors {
  std::array<cplx, 2> v_plus;   // unit norm, belongs to e_plus
  std::array<cplx, 2> v_minus;  // unit norm, belongs to e_minus
  double coalescence;           // |<v+, v->| in [0, 1]
  bool degenerate;              // single independent eigenvector (Z = 0)
};

EigenVectors eigenvectors(const TwoLevelParams& p);

enum class LoopPermutation { Identity, Swap };

/// Follows both eigenvalue branches along a closed parameter loop
/// path(0) == path(1) by nearest-neighbor matching at `steps` points and
/// returns the permutation connecting start and end labels. Throws
/// ContinuationAmbiguous when a step cannot be decided; halve the step size
/// (raise `steps`) in that case. Requires steps >= 32.
LoopPermutation encircle_ep(const std::function<TwoLevelParams(double)>& path, int steps);

}  // namespace epcav::two_level
