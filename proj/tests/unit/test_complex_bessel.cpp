// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/complex_bessel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support/dd_bessel.hpp"

using epcav::bessel::cplx;
using namespace epcav::bessel;

namespace {

struct BesselReferenceRow {
  int m;
  double z_re, z_im;
  double j_re, j_im;
  double y_re, y_im;
};
#include "fixtures/bessel_reference.inc"

double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("J and Y match the high-precision reference over |z| in [1e-3, 1e3]") {
  double worst_j = 0.0, worst_y = 0.0;
  for (const auto& row : kBesselReference) {
    const cplx z(row.z_re, row.z_im);
    const cplx j = cyl_j(row.m, z);
    const cplx y = cyl_y(row.m, z);
    const double ej = rel_err(j, {row.j_re, row.j_im});
    const double ey = rel_err(y, {row.y_re, row.y_im});
    if (ej > worst_j) worst_j = ej;
    if (ey > worst_y) worst_y = ey;
    CAPTURE(row.m);
    CAPTURE(row.z_re);
    CAPTURE(row.z_im);
    CHECK(ej <= 1e-10);
    CHECK(ey <= 1e-10);
  }
  MESSAGE("worst relative error: J ", worst_j, "  Y ", worst_y);
}

TEST_CASE("real-axis values agree with the double-double series oracle") {
  for (double x : {0.05, 0.3, 1.0, 2.7, 5.5, 9.0, 12.7, 13.5, 18.0}) {
    const cplx z(x, 0.0);
    // The ascending series loses ~e^x * eps to cancellation near the top of
    // its range; the tolerance tracks that envelope.
    const double tol = x < 10.0 ? 2e-12 : 1e-10;
    CHECK(rel_err(cyl_j(0, z), {ddb::bessel_j(0, x).hi, 0.0}) < tol);
    CHECK(rel_err(cyl_j(1, z), {ddb::bessel_j(1, x).hi, 0.0}) < tol);
    CHECK(rel_err(cyl_j(7, z), {ddb::bessel_j(7, x).hi, 0.0}) < tol);
    CHECK(rel_err(cyl_y(0, z), {ddb::bessel_y0(x).hi, 0.0}) < 10 * tol);
    CHECK(rel_err(cyl_y(1, z), {ddb::bessel_y1(x).hi, 0.0}) < 10 * tol);
  }
}

TEST_CASE("spec anchor values at z = 1") {
  CHECK(std::abs(cyl_j(0, {1.0, 0.0}).real() - 0.7651976866) < 1e-9);
  CHECK(std::abs(cyl_y(0, {1.0, 0.0}).real() - 0.0882569642) < 1e-9);
}

TEST_CASE("Wronskian J_{m+1} Y_m - J_m Y_{m+1} = 2/(pi z)") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> mod_exp(-2.0, 2.6);
  std::uniform_real_distribution<double> phase(-2.8, 2.8);
  std::uniform_int_distribution<int> order(0, 20);
  for (int trial = 0; trial < 400; ++trial) {
    const double r = std::pow(10.0, mod_exp(rng));
    const cplx z = std::polar(r, phase(rng));
    const int m = order(rng);
    const cplx p1 = cyl_j(m + 1, z) * cyl_y(m, z);
    const cplx p2 = cyl_j(m, z) * cyl_y(m + 1, z);
    const cplx rhs = 2.0 / (std::numbers::pi * z);
    // The difference of products loses relative accuracy when the terms are
    // much larger than the Wronskian itself; scale accordingly.
    const double scale = std::max({std::abs(p1), std::abs(p2), std::abs(rhs)});
    CAPTURE(z);
    CAPTURE(m);
    CHECK(std::abs(p1 - p2 - rhs) / scale < 5e-9);
  }
}

TEST_CASE("hankel1_01 equals the generic entry points") {
  for (cplx z : {cplx(0.5, -0.1), cplx(4.0, -1.0), cplx(17.0, -2.5), cplx(300.0, -0.3)}) {
    const Hankel01 h = hankel1_01(z);
    CHECK(rel_err(h.h0, hankel1(0, z)) < 1e-14);
    CHECK(rel_err(h.h1, hankel1(1, z)) < 1e-14);
  }
}

TEST_CASE("|H0(z)| follows the |z|^{-1/2} envelope at large real argument") {
  const double x1 = 200.0, x2 = 800.0;
  const double ratio = std::abs(hankel1(0, {x2, 0.0})) / std::abs(hankel1(0, {x1, 0.0}));
  CHECK(ratio == doctest::Approx(std::sqrt(x1 / x2)).epsilon(1e-3));
}

TEST_CASE("arrays agree with the scalar entry points") {
  const cplx z(7.3, -0.9);
  const auto js = cyl_j_array(30, z);
  const auto hs = hankel1_array(30, z);
  for (int m = 0; m <= 30; ++m) {
    CHECK(rel_err(js[m], cyl_j(m, z)) < 1e-10);
    CHECK(rel_err(hs[m], hankel1(m, z)) < 1e-10);
  }
}

TEST_CASE("negative orders and derivative identities") {
  const cplx z(2.2, -0.4);
  CHECK(rel_err(cyl_j(-3, z), -cyl_j(3, z)) < 1e-14);
  CHECK(rel_err(cyl_y(-2, z), cyl_y(2, z)) < 1e-14);
  // d/dz [z^m J_m] = z^m J_{m-1}  =>  J_m' = J_{m-1} - (m/z) J_m
  for (int m : {1, 2, 6}) {
    const cplx lhs = cyl_j_prime(m, z);
    const cplx rhs = cyl_j(m - 1, z) - double(m) / z * cyl_j(m, z);
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
  CHECK(rel_err(hankel1_prime(0, z), -hankel1(1, z)) < 1e-15);
}

TEST_CASE("zero argument") {
  CHECK(cyl_j(0, {0.0, 0.0}) == cplx(1.0, 0.0));
  CHECK(cyl_j(4, {0.0, 0.0}) == cplx(0.0, 0.0));
  CHECK_THROWS_AS((void)cyl_y(0, {0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS((void)hankel1(1, {0.0, 0.0}), std::domain_error);
}
