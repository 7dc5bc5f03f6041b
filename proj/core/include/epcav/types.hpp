// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace epcav {

/// Dimensionless complex size parameter kR of a resonance. Physical
/// quasi-bound states decay in time, so Im(kR) <= 0.
struct ComplexFrequency {
  std::complex<double> kR;

  double re() const { return kR.real(); }
  double im() const { return kR.imag(); }
};

/// Sweep coordinates: refractive index and deformation.
struct ParameterPoint {
  double n = 0.0;    // > 1
  double chi = 0.0;  // >= 0
};

}  // namespace epcav
