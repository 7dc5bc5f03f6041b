// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file field.hpp
///
/// Interior mode intensity on a uniform Cartesian mesh, reconstructed from
/// converged boundary layer densities through the interior representation
///
///   u(x) = oint [ G_in(x,y) psi(y) - dG_in/dnu(y) (x,y) phi(y) ] ds(y),
///
/// with the interior wavenumber n k, and normalized into the discrete
/// probability distribution rho_i = |u_i|^2 / sum_j |u_j|^2.

#include <complex>
#include <vector>

#include "epcav/bem.hpp"
#include "epcav/geometry.hpp"

namespace epcav::field {

using cplx = std::complex<double>;
using geometry::EllipseShape;
using geometry::Vec2;

/// Uniform grid over the ellipse bounding box [-a,a] x [-b,b] with cell
/// centers as candidate states. A point is an interior state iff
///   (x/(a-margin))^2 + (y/(b-margin))^2 < 1.
struct MeshSpec {
  EllipseShape shape;
  double guard_margin = 0.0;
  int nx = 0;
  int ny = 0;
  double xmin = 0.0, xmax = 0.0;
  double ymin = 0.0, ymax = 0.0;
  std::vector<int> inside;  // flattened indices j*nx + i of interior states

  int n_states() const { return static_cast<int>(inside.size()); }
  double dx() const { return (xmax - xmin) / nx; }
  double dy() const { return (ymax - ymin) / ny; }
  Vec2 point(int flat) const {
    const int j = flat / nx, i = flat % nx;
    return {xmin + (i + 0.5) * dx(), ymin + (j + 0.5) * dy()};
  }
  bool same_grid(const MeshSpec& o) const {
    return nx == o.nx && ny == o.ny && xmin == o.xmin && xmax == o.xmax && ymin == o.ymin &&
           ymax == o.ymax && inside == o.inside;
  }
};

/// Builds the interior mesh at `resolution` cells per unit R. The guard
/// margin (typically half a boundary element length) keeps every state away
/// from the near-boundary zone where the layer kernels peak.
/// Requires resolution >= 16.
MeshSpec interior_mesh(const EllipseShape& shape, int resolution, double guard_margin);

/// Normalized discrete intensity distribution over the interior states.
struct IntensityField {
  MeshSpec spec;
  std::vector<double> rho;  // rho[i] pairs with spec.inside[i]; sums to 1
};

/// Reconstructs |u|^2 on the mesh from a converged mode's boundary
/// densities. `densities` layout is [phi; psi] as produced by the solver.
IntensityField reconstruct_intensity(const bem::ResonantMode& mode,
                                     const geometry::BoundaryMesh& boundary,
                                     const MeshSpec& spec);

/// Same, for an explicit density vector (used by tests with analytic data).
IntensityField reconstruct_intensity(const Eigen::VectorXcd& densities, cplx kR,
                                     double n_inside, const geometry::BoundaryMesh& boundary,
                                     const MeshSpec& spec);

}  // namespace epcav::field
