// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace epcav {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// geometry: arclength inversion or perimeter quadrature failed to converge.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// bem: kernel requested at (near-)coincident points.
class KernelSingular : public Error {
 public:
  using Error::Error;
};

// bem: SVD/LU on a matrix with non-finite entries.
class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

// bem: null vector requested from an operator that is not near-singular.
class NotSingular : public Error {
 public:
  using Error::Error;
};

// bem root finder.
class NoConvergence : public Error {
 public:
  using Error::Error;
};
class RootEscapedRegion : public Error {
 public:
  using Error::Error;
};
class UnphysicalRoot : public Error {
 public:
  using Error::Error;
};

// two_level / sweep: branch continuation could not decide a pairing.
class ContinuationAmbiguous : public Error {
 public:
  using Error::Error;
};

// field/entropy: distributions on different interior meshes compared.
class MeshMismatch : public Error {
 public:
  using Error::Error;
};

// entropy: discontinuity profile requested for samples that were not taken.
class MissingSamples : public Error {
 public:
  using Error::Error;
};

// field: evaluation point inside the boundary guard margin.
class EvaluationTooCloseToBoundary : public Error {
 public:
  using Error::Error;
};

// sweep: gap minimum sits on the window boundary.
class NoInteriorMinimum : public Error {
 public:
  using Error::Error;
};

// sweep: no above-threshold entropy discontinuity found.
class LinesNotFound : public Error {
 public:
  using Error::Error;
};

// cli/config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace epcav
