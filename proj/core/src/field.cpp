// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/field.hpp"

#include <cmath>
#include <stdexcept>

#include "epcav/complex_bessel.hpp"
#include "epcav/errors.hpp"

namespace epcav::field {

namespace {

constexpr cplx kI{0.0, 1.0};

bool inside_with_margin(const EllipseShape& shape, double margin, const Vec2& p) {
  const double ax = shape.a() - margin;
  const double by = shape.b() - margin;
  if (ax <= 0.0 || by <= 0.0) return false;
  const double u = p.x / ax, v = p.y / by;
  return u * u + v * v < 1.0;
}

}  // namespace

MeshSpec interior_mesh(const EllipseShape& shape, int resolution, double guard_margin) {
  if (resolution < 16) throw std::invalid_argument("interior_mesh: resolution must be >= 16");
  if (guard_margin < 0.0) throw std::invalid_argument("interior_mesh: negative guard margin");

  MeshSpec spec;
  spec.shape = shape;
  spec.guard_margin = guard_margin;
  spec.xmin = -shape.a();
  spec.xmax = shape.a();
  spec.ymin = -shape.b();
  spec.ymax = shape.b();
  const double cell = shape.R / resolution;
  spec.nx = static_cast<int>(std::ceil((spec.xmax - spec.xmin) / cell));
  spec.ny = static_cast<int>(std::ceil((spec.ymax - spec.ymin) / cell));
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const int flat = j * spec.nx + i;
      const Vec2 p{spec.xmin + (i + 0.5) * (spec.xmax - spec.xmin) / spec.nx,
                   spec.ymin + (j + 0.5) * (spec.ymax - spec.ymin) / spec.ny};
      if (inside_with_margin(shape, guard_margin, p)) spec.inside.push_back(flat);
    }
  }
  return spec;
}

IntensityField reconstruct_intensity(const Eigen::VectorXcd& densities, cplx kR,
                                     double n_inside, const geometry::BoundaryMesh& boundary,
                                     const MeshSpec& spec) {
  const int nb = boundary.size();
  if (densities.size() != 2 * nb)
    throw std::invalid_argument("reconstruct_intensity: density size != 2 * boundary size");

  const cplx k_in = n_inside * kR;
  const int n = spec.n_states();
  std::vector<double> intensity(n);

  for (int idx = 0; idx < n; ++idx) {
    const Vec2 x = spec.point(spec.inside[idx]);
    if (!inside_with_margin(spec.shape, spec.guard_margin, x))
      throw EvaluationTooCloseToBoundary("reconstruct_intensity: state inside guard margin");
    cplx u = 0.0;
    for (int j = 0; j < nb; ++j) {
      const auto& node = boundary.nodes[j];
      const Vec2 diff = x - node.position;
      const double d = diff.norm();
      const auto h = bessel::hankel1_01(k_in * d);
      const cplx g = 0.25 * kI * h.h0;
      const double ddot = -(diff.x * node.normal.x + diff.y * node.normal.y) / d;
      const cplx dg = -0.25 * kI * k_in * h.h1 * ddot;
      u += (g * densities(nb + j) - dg * densities(j)) * node.ds;
    }
    intensity[idx] = std::norm(u);
  }

  // fixed-order compensated normalization
  double sum = 0.0, comp = 0.0;
  for (double v : intensity) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (!(sum > 0.0))
    throw std::invalid_argument("reconstruct_intensity: vanishing interior field");

  IntensityField field;
  field.spec = spec;
  field.rho.resize(n);
  for (int i = 0; i < n; ++i) field.rho[i] = intensity[i] / sum;
  return field;
}

IntensityField reconstruct_intensity(const bem::ResonantMode& mode,
                                     const geometry::BoundaryMesh& boundary,
                                     const MeshSpec& spec) {
  return reconstruct_intensity(mode.densities, mode.k.kR, mode.params.n, boundary, spec);
}

}  // namespace epcav::field
