// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/geometry.hpp"

#include <numbers>
#include <stdexcept>

#include "epcav/errors.hpp"

namespace epcav::geometry {

namespace {

// Adaptive Simpson on [lo, hi] with absolute tolerance tol.
template <typename F>
double adaptive_simpson(const F& f, double lo, double hi, double tol, int depth,
                        double flo, double fmid, double fhi) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flm = f(lmid);
  const double frm = f(rmid);
  const double h = hi - lo;
  const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
  const double left = h / 12.0 * (flo + 4.0 * flm + fmid);
  const double right = h / 12.0 * (fmid + 4.0 * frm + fhi);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol) return left + right + err / 15.0;
  return adaptive_simpson(f, lo, mid, 0.5 * tol, depth - 1, flo, flm, fmid) +
         adaptive_simpson(f, mid, hi, 0.5 * tol, depth - 1, fmid, frm, fhi);
}

template <typename F>
double integrate(const F& f, double lo, double hi, double tol) {
  if (lo == hi) return 0.0;
  return adaptive_simpson(f, lo, hi, tol, 48, f(lo), f(0.5 * (lo + hi)), f(hi));
}

}  // namespace

PointFrame boundary_point(const EllipseShape& shape, double t) {
  const double a = shape.a(), b = shape.b();
  const double c = std::cos(t), s = std::sin(t);
  const double g = std::hypot(b * c, a * s);
  PointFrame f;
  f.position = {a * c, b * s};
  f.normal = {b * c / g, a * s / g};
  f.curvature = a * b / (g * g * g);
  return f;
}

double boundary_speed(const EllipseShape& shape, double t) {
  return std::hypot(shape.a() * std::sin(t), shape.b() * std::cos(t));
}

double perimeter(const EllipseShape& shape) {
  const auto speed = [&](double t) { return boundary_speed(shape, t); };
  // quarter-period symmetry
  return 4.0 * integrate(speed, 0.0, 0.5 * std::numbers::pi, 1e-14 * shape.a());
}

BoundaryMesh discretize(const EllipseShape& shape, int n_elements) {
  if (n_elements < 16) throw std::invalid_argument("discretize: n_elements must be >= 16");

  BoundaryMesh mesh;
  mesh.shape = shape;
  mesh.perimeter = perimeter(shape);
  mesh.nodes.reserve(n_elements);

  const double h = mesh.perimeter / n_elements;
  const auto speed = [&](double t) { return boundary_speed(shape, t); };

  // Walk the half-element targets s = 0, h/2, h, 3h/2, ... in order (element
  // edges and midpoints interleaved), inverting the cumulative arclength
  // with safeguarded Newton from the previous point.
  double t_cur = 0.0;
  double s_cur = 0.0;
  std::vector<double> t_at_half(2 * n_elements + 1);
  t_at_half[0] = 0.0;
  for (int half = 1; half <= 2 * n_elements; ++half) {
    const double target = half * 0.5 * h;
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
      const double ds = target - s_cur;
      double dt = ds / speed(t_cur);
      // bound the step: speed is smooth, but keep Newton sane crossing the
      // flattest part of the boundary
      const double cap = 1.5 * h / shape.b() + 0.1;
      if (std::abs(dt) > cap) dt = dt > 0 ? cap : -cap;
      const double t_next = t_cur + dt;
      s_cur += integrate(speed, t_cur, t_next, 1e-15 * shape.a());
      t_cur = t_next;
      if (std::abs(target - s_cur) < 1e-10 * mesh.perimeter * 0.01) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw QuadratureFailure("discretize: arclength inversion stalled at target " +
                              std::to_string(target));
    t_at_half[half] = t_cur;
  }
  for (int i = 0; i < n_elements; ++i) {
    const double t_mid = t_at_half[2 * i + 1];
    const PointFrame f = boundary_point(shape, t_mid);
    mesh.nodes.push_back(
        {t_mid, f.position, f.normal, f.curvature, h, t_at_half[2 * i], t_at_half[2 * i + 2]});
  }
  return mesh;
}

}  // namespace epcav::geometry
