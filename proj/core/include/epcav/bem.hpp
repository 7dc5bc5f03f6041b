// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file bem.hpp
///
/// Boundary-element formulation of the open 2D dielectric cavity for TM
/// polarization. The field u and its normal derivative are continuous
/// across the boundary; writing phi = u|_G and psi = du/dnu|_G, the interior
/// (wavenumber n k) and exterior (wavenumber k, outgoing) Green identities
/// give the homogeneous block system
///
///     [ I/2 + D_in   -S_in  ] [ phi ]     [ 0 ]
///     [ I/2 - D_out  +S_out ] [ psi ]  =  [ 0 ],
///
/// where S and D are the single- and double-layer operators discretized by
/// midpoint collocation on equal-arclength elements, with analytic
/// self-terms. Resonances are the complex k where the matrix develops a
/// nontrivial kernel, located by minimizing the smallest singular value.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "epcav/geometry.hpp"
#include "epcav/types.hpp"

namespace epcav::bem {

using cplx = std::complex<double>;
using geometry::BoundaryMesh;
using geometry::Vec2;

/// Outgoing 2D Helmholtz kernel G = -(i/4) H^(1)_0(k |r - r_src|) and its
/// derivative along the unit normal nu_src attached to r_src. Throws
/// KernelSingular when |r - r_src| < 1e-14.
struct KernelValues {
  cplx g;
  cplx dg_dnu_src;
};
KernelValues green_kernel(cplx k, Vec2 r, Vec2 r_src, Vec2 nu_src);

/// Dense 2N x 2N boundary operator at fixed (mesh, n_inside, k).
/// Immutable after assembly.
class BoundaryOperator {
 public:
  BoundaryOperator(Eigen::MatrixXcd matrix, cplx k, double n_inside,
                   const BoundaryMesh* mesh)
      : matrix_(std::move(matrix)), k_(k), n_inside_(n_inside), mesh_(mesh) {}

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  cplx k() const { return k_; }
  double n_inside() const { return n_inside_; }
  const BoundaryMesh& mesh() const { return *mesh_; }

 private:
  Eigen::MatrixXcd matrix_;
  cplx k_;
  double n_inside_;
  const BoundaryMesh* mesh_;
};

/// Assembles the block system above. Requires n_inside > 1 and k != 0.
BoundaryOperator assemble(const BoundaryMesh& mesh, double n_inside, cplx kR);

/// The `count` smallest singular values (ascending, 1 <= count <= 4),
/// via LU-based block inverse iteration with a deterministic start;
/// falls back to a full SVD if the iteration stalls. Throws
/// DecompositionFailure on non-finite input.
std::vector<double> smallest_singular_values(const BoundaryOperator& op, int count);

/// Right singular vector of sigma_min, unit norm, phase fixed by making the
/// largest-magnitude entry real positive. Throws NotSingular if
/// sigma_min > rel_tol * sigma_max.
Eigen::VectorXcd null_vector(const BoundaryOperator& op, double rel_tol = 1e-4);

struct SolveOptions {
  double trust_radius = 0.5;    // |k - k_guess| bound
  double tol_sigma_rel = 1e-8;  // convergence: sigma_min < tol * sigma_max
  double tol_step = 1e-10;      // and last polish step below this
  int max_evaluations = 200;    // sigma_min evaluation budget
  double im_ceiling = 1e-8;     // UnphysicalRoot above this Im(kR)
  double initial_step = 5e-4;   // first simplex/cross size
};

/// A converged resonance.
struct ResonantMode {
  ComplexFrequency k;
  Eigen::VectorXcd densities;  // unit-norm null vector [phi; psi], phase fixed
  double sigma_min = 0.0;      // relative to sigma_max
  double sigma_second = 0.0;   // second smallest, relative
  ParameterPoint params;
  // Populated when sigma_second / sigma_min < 10 (near-degenerate pair).
  std::optional<Eigen::VectorXcd> second_densities;
};

/// Locates the resonance nearest k_guess by derivative-free minimization of
/// sigma_min followed by quadratic-model polishing. Errors: NoConvergence,
/// RootEscapedRegion, UnphysicalRoot.
ResonantMode find_resonance(const BoundaryMesh& mesh, double n_inside, cplx k_guess,
                            const SolveOptions& opts = {});

/// Relative sigma_min landscape value at one k; building block for scans.
double sigma_min_at(const BoundaryMesh& mesh, double n_inside, cplx kR);

struct ScanSample {
  cplx kR;
  double sigma_rel;
};

/// Rectangle scan of the sigma_min landscape (row-major, re fastest).
std::vector<ScanSample> sigma_scan(const BoundaryMesh& mesh, double n_inside, cplx lo,
                                   cplx hi, int n_re, int n_im);

/// Strict local minima of a sigma_scan result, sorted by sigma.
std::vector<ScanSample> scan_minima(const std::vector<ScanSample>& scan, int n_re, int n_im);

}  // namespace epcav::bem
