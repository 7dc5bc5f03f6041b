// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file geometry.hpp
///
/// Area-preserving ellipse family and its boundary discretization. The
/// deformation parameter chi stretches the major semi-axis to a = R(1+chi)
/// and shrinks the minor one to b = R/(1+chi), so a*b = R^2 for every chi
/// and chi = 0 is the circle of radius R.

#include <cmath>
#include <vector>

namespace epcav::geometry {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

struct EllipseShape {
  double R = 1.0;
  double chi = 0.0;

  double a() const { return R * (1.0 + chi); }
  double b() const { return R / (1.0 + chi); }
};

struct PointFrame {
  Vec2 position;
  Vec2 normal;  // outward, unit length
  double curvature;
};

/// Position, outward normal, and curvature at parameter t (ellipse angle
/// parameter, not arclength): position = (a cos t, b sin t).
PointFrame boundary_point(const EllipseShape& shape, double t);

/// Arclength speed |d position / dt|.
double boundary_speed(const EllipseShape& shape, double t);

/// Full perimeter by adaptive quadrature (relative error ~1e-12).
double perimeter(const EllipseShape& shape);

struct BoundaryNode {
  double t;  // parameter of the element midpoint
  Vec2 position;
  Vec2 normal;
  double curvature;
  double ds;    // element arclength (uniform by construction)
  double t_lo;  // parameter range covered by the element
  double t_hi;
};

struct BoundaryMesh {
  EllipseShape shape;
  std::vector<BoundaryNode> nodes;
  double perimeter = 0.0;
  bool closed = true;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Splits the boundary into n_elements equal-arclength elements and places
/// one node at each element midpoint. Requires n_elements >= 16. Throws
/// QuadratureFailure if the arclength inversion does not reach 1e-10.
BoundaryMesh discretize(const EllipseShape& shape, int n_elements);

}  // namespace epcav::geometry
