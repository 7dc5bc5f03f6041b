// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/two_level.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "epcav/errors.hpp"

using namespace epcav::two_level;
using epcav::ContinuationAmbiguous;

namespace {

TwoLevelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {{u(rng), u(rng)}, {u(rng), u(rng)}, u(rng)};
}

}  // namespace

TEST_CASE("eigenvalue examples") {
  {
    const EigenPair ev = eigenvalues({{0.0, -0.1}, {0.0, -0.5}, 0.3});
    CHECK(ev.e_plus.real() == doctest::Approx(0.223607).epsilon(1e-5));
    CHECK(ev.e_plus.imag() == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(ev.e_minus.real() == doctest::Approx(-0.223607).epsilon(1e-5));
    CHECK(ev.e_minus.imag() == doctest::Approx(-0.3).epsilon(1e-12));
  }
  {
    const EigenPair ev = eigenvalues({{0.0, -0.1}, {0.0, -0.5}, 0.1});
    CHECK(std::abs(ev.e_plus - cplx(0.0, -0.126795)) < 1e-6);
    CHECK(std::abs(ev.e_minus - cplx(0.0, -0.473205)) < 1e-6);
  }
  {
    const EigenPair ev = eigenvalues({{1.0, 0.2}, {1.0, -0.2}, 0.2});
    CHECK(std::abs(ev.e_plus - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(ev.e_minus - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(ev.z) < 1e-15);
  }
}

TEST_CASE("regime classification examples") {
  CHECK(classify_regime({{0.0, -0.1}, {0.0, -0.5}, 0.3}, 1e-9) == Regime::Strong);
  CHECK(classify_regime({{0.0, -0.1}, {0.0, -0.5}, 0.1}, 1e-9) == Regime::Weak);
  CHECK(classify_regime({{1.0, 0.2}, {1.0, -0.2}, 0.2}, 1e-9) == Regime::EP);
}

TEST_CASE("trace and determinant identities over 1e4 random draws") {
  std::mt19937 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const TwoLevelParams p = random_params(rng);
    const EigenPair ev = eigenvalues(p);
    const cplx tr = p.eps1 + p.eps2;
    const cplx det = p.eps1 * p.eps2 - cplx(p.omega * p.omega);
    const double scale_tr = std::max(std::abs(tr), 1.0);
    const double scale_det = std::max(std::abs(det), 1.0);
    REQUIRE(std::abs(ev.e_plus + ev.e_minus - tr) <= 1e-12 * scale_tr);
    REQUIRE(std::abs(ev.e_plus * ev.e_minus - det) <= 1e-12 * scale_det);
    REQUIRE(std::abs(ev.e_plus - ev.e_minus - 2.0 * ev.z) <= 1e-12 * scale_tr);
  }
}

TEST_CASE("strong regime: symmetric losses split in Re and agree in Im") {
  // Example 1 has Re eps1 = Re eps2; strong interaction must split the real
  // parts and keep the imaginary parts crossed, and mirrored for weak.
  const EigenPair strong = eigenvalues({{0.0, -0.1}, {0.0, -0.5}, 0.3});
  CHECK(strong.e_plus.real() != doctest::Approx(strong.e_minus.real()));
  CHECK(strong.e_plus.imag() == doctest::Approx(strong.e_minus.imag()));
  const EigenPair weak = eigenvalues({{0.0, -0.1}, {0.0, -0.5}, 0.1});
  CHECK(weak.e_plus.real() == doctest::Approx(weak.e_minus.real()));
  CHECK(weak.e_plus.imag() != doctest::Approx(weak.e_minus.imag()));
}

TEST_CASE("eigenvectors: diagonal, EP, and generic vs dense solver oracle") {
  {
    const TwoLevelParams p{{0.3, 0.0}, {0.9, 0.1}, 0.0};
    const EigenVectors v = eigenvectors(p);
    CHECK(v.coalescence == 0.0);
    CHECK_FALSE(v.degenerate);
    // canonical basis, paired with the right eigenvalue
    const EigenPair ev = eigenvalues(p);
    const cplx diag_plus = v.v_plus[0] != cplx(0.0) ? p.eps1 : p.eps2;
    CHECK(std::abs(diag_plus - ev.e_plus) < 1e-15);
    CHECK(std::abs(std::abs(v.v_plus[0]) + std::abs(v.v_plus[1]) - 1.0) < 1e-15);
  }
  {
    const EigenVectors v = eigenvectors({{1.0, 0.2}, {1.0, -0.2}, 0.2});
    CHECK(v.coalescence == doctest::Approx(1.0));
    CHECK(v.degenerate);
    CHECK(std::abs(v.v_plus[0] - v.v_minus[0]) < 1e-15);
  }
  {
    const TwoLevelParams p{{0.0, -0.1}, {0.0, -0.5}, 0.3};
    const EigenVectors v = eigenvectors(p);
    CHECK(v.coalescence > 0.0);
    CHECK(v.coalescence < 1.0);

    Eigen::Matrix2cd h;
    h << p.eps1, cplx(p.omega), cplx(p.omega), p.eps2;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(h);
    REQUIRE(solver.info() == Eigen::Success);
    const auto vecs = solver.eigenvectors();
    const double oracle = std::abs(vecs.col(0).dot(vecs.col(1)));
    CHECK(v.coalescence == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("eigenvector residuals over random draws") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const TwoLevelParams p = random_params(rng);
    const EigenVectors v = eigenvectors(p);
    const EigenPair ev = eigenvalues(p);
    auto residual = [&](const std::array<cplx, 2>& vec, const cplx& e) {
      const cplx r0 = p.eps1 * vec[0] + p.omega * vec[1] - e * vec[0];
      const cplx r1 = p.omega * vec[0] + p.eps2 * vec[1] - e * vec[1];
      return std::sqrt(std::norm(r0) + std::norm(r1));
    };
    const double scale = std::max({std::abs(p.eps1), std::abs(p.eps2), std::abs(p.omega), 1.0});
    REQUIRE(residual(v.v_plus, ev.e_plus) <= 1e-12 * scale);
    if (!v.degenerate) REQUIRE(residual(v.v_minus, ev.e_minus) <= 1e-12 * scale);
  }
}

TEST_CASE("coalescence approaches 1 along a ray into the EP") {
  // eps1 = s + i(0.2 + s), eps2 = conj-ish mirror; EP of the family sits at
  // s = 0 by construction (half_diff^2 = -omega^2).
  double prev = -1.0;
  for (double s : {0.5, 0.25, 0.1, 0.05, 0.01, 0.001, 1e-4, 1e-6}) {
    const TwoLevelParams p{{s, 0.2}, {-s, -0.2}, 0.2};
    const double c = eigenvectors(p).coalescence;
    CHECK(c > prev - 1e-9);  // monotone within tolerance
    prev = c;
  }
  CHECK(prev > 0.999);
}

namespace {

// Family with a closed-form EP at (x, y) = (0, omega) in eps1 = x + i y,
// eps2 = -eps1: Z^2 = (x + i y)^2 + omega^2.
TwoLevelParams family_at(double x, double y, double omega = 0.25) {
  return {{x, y}, {-x, -y}, omega};
}

}  // namespace

TEST_CASE("encircling the EP swaps branches; two turns restore them") {
  const double omega = 0.25;
  auto loop_around_ep = [&](double t) {
    const double ang = 2.0 * std::numbers::pi * t;
    return family_at(0.1 * std::cos(ang), omega + 0.1 * std::sin(ang), omega);
  };
  CHECK(encircle_ep(loop_around_ep, 256) == LoopPermutation::Swap);

  auto twice = [&](double t) { return loop_around_ep(t < 0.5 ? 2.0 * t : 2.0 * t - 1.0); };
  CHECK(encircle_ep(twice, 512) == LoopPermutation::Identity);

  auto far_loop = [&](double t) {
    const double ang = 2.0 * std::numbers::pi * t;
    return family_at(1.5 + 0.1 * std::cos(ang), 0.1 * std::sin(ang), omega);
  };
  CHECK(encircle_ep(far_loop, 256) == LoopPermutation::Identity);
}

TEST_CASE("swap iff the loop winds once around Z = 0") {
  const double omega = 0.25;
  // radius sweep: loops centered at the EP with growing radius keep winding
  // number 1 until they swallow the second EP at (0, -omega) too.
  for (double radius : {0.05, 0.2, 0.7}) {
    auto loop = [&](double t) {
      const double ang = 2.0 * std::numbers::pi * t;
      return family_at(radius * std::cos(ang), omega + radius * std::sin(ang), omega);
    };
    const auto perm = encircle_ep(loop, 1024);
    if (radius < 2.0 * omega) {
      CHECK(perm == LoopPermutation::Swap);
    } else {
      CHECK(perm == LoopPermutation::Identity);  // encloses both EPs
    }
  }
}

TEST_CASE("continuation consistency: doubling steps does not change the answer") {
  auto loop = [&](double t) {
    const double ang = 2.0 * std::numbers::pi * t;
    return family_at(0.07 * std::cos(ang), 0.25 + 0.07 * std::sin(ang));
  };
  CHECK(encircle_ep(loop, 256) == encircle_ep(loop, 512));
}

TEST_CASE("precondition and ambiguity errors") {
  auto loop = [](double) { return TwoLevelParams{{0.0, 0.0}, {0.0, 0.0}, 0.1}; };
  CHECK_THROWS_AS((void)encircle_ep(loop, 8), std::invalid_argument);
  // jump from eigenvalues {+-1} to {+-i}: both pairings cost the same
  auto undecidable = [](double t) {
    return t < 0.5 ? TwoLevelParams{{1.0, 0.0}, {-1.0, 0.0}, 0.0}
                   : TwoLevelParams{{0.0, 1.0}, {0.0, -1.0}, 0.0};
  };
  CHECK_THROWS_AS((void)encircle_ep(undecidable, 64), ContinuationAmbiguous);
}
