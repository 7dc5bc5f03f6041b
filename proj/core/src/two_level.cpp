// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/two_level.hpp"

#include <cmath>
#include <stdexcept>

#include "epcav/errors.hpp"

namespace epcav::two_level {

namespace {

double scale_of(const TwoLevelParams& p) {
  return std::max({std::abs(p.eps1), std::abs(p.eps2), std::abs(p.omega), 1.0});
}

// Pairing tolerance for branch continuation: if the identity and swapped
// assignments are this close relative to each other, refuse to guess.
constexpr double kContinuationRelTol = 1e-6;

}  // namespace

cplx principal_sqrt(cplx c) {
  cplx w = std::sqrt(c);
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  return w;
}

EigenPair eigenvalues(const TwoLevelParams& p) {
  const cplx avg = 0.5 * (p.eps1 + p.eps2);
  const cplx half_diff = 0.5 * (p.eps1 - p.eps2);
  const cplx z = principal_sqrt(half_diff * half_diff + p.omega * p.omega);
  return {avg + z, avg - z, z, classify_regime(p, 1e-12 * scale_of(p))};
}

Regime classify_regime(const TwoLevelParams& p, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("classify_regime: tol must be > 0");
  const cplx half_diff = 0.5 * (p.eps1 - p.eps2);
  const cplx z = principal_sqrt(half_diff * half_diff + p.omega * p.omega);
  if (std::abs(z) < tol) return Regime::EP;
  const double gamma_gap = std::abs(p.eps1.imag() - p.eps2.imag());
  return 2.0 * p.omega > gamma_gap ? Regime::Strong : Regime::Weak;
}

EigenVectors eigenvectors(const TwoLevelParams& p) {
  const EigenPair ev = eigenvalues(p);
  const double scale = scale_of(p);

  auto normalized = [](std::array<cplx, 2> v) {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return std::array<cplx, 2>{v[0] / n, v[1] / n};
  };
  auto inner_mag = [](const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
    return std::abs(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
  };

  if (p.omega == 0.0) {
    if (p.eps1 == p.eps2) {
      // Scalar matrix: every vector is an eigenvector, nothing coalesces.
      return {{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}, 0.0, false};
    }
    const bool plus_is_first = std::abs(ev.e_plus - p.eps1) <= std::abs(ev.e_plus - p.eps2);
    std::array<cplx, 2> e1{cplx(1.0), cplx(0.0)};
    std::array<cplx, 2> e2{cplx(0.0), cplx(1.0)};
    return plus_is_first ? EigenVectors{e1, e2, 0.0, false}
                         : EigenVectors{e2, e1, 0.0, false};
  }

  // For eigenvalue E both (omega, E - eps1) and (E - eps2, omega) solve the
  // system; pick the larger one for conditioning.
  auto vector_for = [&](const cplx& e) {
    std::array<cplx, 2> a{cplx(p.omega), e - p.eps1};
    std::array<cplx, 2> b{e - p.eps2, cplx(p.omega)};
    const double na = std::norm(a[0]) + std::norm(a[1]);
    const double nb = std::norm(b[0]) + std::norm(b[1]);
    return normalized(na >= nb ? a : b);
  };

  const std::array<cplx, 2> vp = vector_for(ev.e_plus);
  if (std::abs(ev.z) <= 1e-15 * scale) {
    return {vp, vp, 1.0, true};
  }
  const std::array<cplx, 2> vm = vector_for(ev.e_minus);
  return {vp, vm, inner_mag(vp, vm), false};
}

LoopPermutation encircle_ep(const std::function<TwoLevelParams(double)>& path, int steps) {
  if (steps < 32) throw std::invalid_argument("encircle_ep: steps must be >= 32");

  const EigenPair start = eigenvalues(path(0.0));
  cplx a = start.e_plus;
  cplx b = start.e_minus;

  auto decide = [](double cost_id, double cost_sw, double t) {
    const double larger = std::max(cost_id, cost_sw);
    if (std::abs(cost_id - cost_sw) <= kContinuationRelTol * larger) {
      throw ContinuationAmbiguous("encircle_ep: pairing undecidable at t = " +
                                  std::to_string(t) + "; increase steps");
    }
    return cost_id <= cost_sw;
  };

  for (int i = 1; i <= steps; ++i) {
    const double t = double(i) / steps;
    const EigenPair ev = eigenvalues(path(t));
    const double cost_id = std::norm(ev.e_plus - a) + std::norm(ev.e_minus - b);
    const double cost_sw = std::norm(ev.e_minus - a) + std::norm(ev.e_plus - b);
    if (decide(cost_id, cost_sw, t)) {
      a = ev.e_plus;
      b = ev.e_minus;
    } else {
      a = ev.e_minus;
      b = ev.e_plus;
    }
  }
  // The loop is closed, so the tracked values must land on the starting pair;
  // the permutation is whichever assignment they landed on.
  const double cost_id = std::norm(a - start.e_plus) + std::norm(b - start.e_minus);
  const double cost_sw = std::norm(a - start.e_minus) + std::norm(b - start.e_plus);
  return decide(cost_id, cost_sw, 1.0) ? LoopPermutation::Identity : LoopPermutation::Swap;
}

}  // namespace epcav::two_level
