// Copyright (c) 2026 The epcav developers. All rights reserved.
#include <cstdio>
#include <cstdlib>
// SPDX-License-Identifier: Apache-2.0

#include "epcav/bem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "epcav/complex_bessel.hpp"
#include "epcav/errors.hpp"

namespace epcav::bem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr cplx kI{0.0, 1.0};

// int_0^w H^(1)_0(k s) ds by termwise integration of the ascending series;
// this is the analytic single-layer self term (log singularity included).
cplx h0_integral(cplx k, double w) {
  const cplx q = 0.25 * k * k * w * w;  // (k w / 2)^2
  const cplx big_l = std::log(0.5 * k * w) + kEulerGamma;
  cplx a = 1.0;  // (-q)^p / ((2p+1) (p!)^2), running
  cplx sum_j = 0.0;
  cplx sum_y = 0.0;
  double harmonic = 0.0;
  for (int p = 0; p <= 48; ++p) {
    if (p > 0) {
      a *= -q * (double(2 * p - 1) / (double(2 * p + 1) * double(p) * double(p)));
      harmonic += 1.0 / p;
    }
    sum_j += a;
    sum_y += a * (big_l - 1.0 / double(2 * p + 1) - harmonic);
    if (std::norm(a) < 1e-34 * std::norm(sum_j)) break;
  }
  return w * sum_j + kI * (2.0 * w / kPi) * sum_y;
}

void check_separation(double d) {
  if (d < 1e-14) throw KernelSingular("green_kernel: evaluation points coincide");
}

// 8-point Gauss-Legendre on [-1, 1]
constexpr int kGaussN = 8;
constexpr double kGaussX[kGaussN] = {-0.9602898564975363, -0.7966664774136267,
                                     -0.5255324099163290, -0.1834346424956498,
                                     0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
constexpr double kGaussW[kGaussN] = {0.1012285362903763, 0.2223810344533745,
                                     0.3137066458778873, 0.3626837833783620,
                                     0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

// Cyclic band half-width around the diagonal where the kernels vary too
// fast for single-midpoint products; those entries use curved-element Gauss
// quadrature instead.
constexpr int kNearBand = 3;

struct PairEntries {
  cplx s_in, s_out, d_in, d_out;
};

// Entries of row x (collocation point) against element j by quadrature over
// the element's parameter range.
PairEntries integrate_element(const geometry::EllipseShape& shape, const Vec2& x, cplx k_in,
                              cplx k_out, double t_lo, double t_hi) {
  PairEntries e{0.0, 0.0, 0.0, 0.0};
  const double mid = 0.5 * (t_lo + t_hi);
  const double half = 0.5 * (t_hi - t_lo);
  for (int q = 0; q < kGaussN; ++q) {
    const double t = mid + half * kGaussX[q];
    const auto f = geometry::boundary_point(shape, t);
    const double w = kGaussW[q] * half * geometry::boundary_speed(shape, t);
    const Vec2 diff = x - f.position;
    const double d = diff.norm();
    check_separation(d);
    const auto h_in = bessel::hankel1_01(k_in * d);
    const auto h_out = bessel::hankel1_01(k_out * d);
    const double ddot = -(diff.x * f.normal.x + diff.y * f.normal.y) / d;
    e.s_in += 0.25 * kI * h_in.h0 * w;
    e.s_out += 0.25 * kI * h_out.h0 * w;
    e.d_in += -0.25 * kI * k_in * h_in.h1 * ddot * w;
    e.d_out += -0.25 * kI * k_out * h_out.h1 * ddot * w;
  }
  return e;
}

// deterministic start block for the inverse iteration
Eigen::MatrixXcd deterministic_block(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd x(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = cplx(u(rng), u(rng));
  return x;
}

double sigma_max_estimate(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd v = deterministic_block(m.rows(), 1);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 12; ++it) {
    Eigen::VectorXcd w = m * v;
    sigma = w.norm();
    v = m.adjoint() * w;
    const double n = v.norm();
    if (n == 0.0) break;
    v /= n;
  }
  return sigma;
}

struct SmallSvd {
  std::vector<double> sigmas;       // ascending
  Eigen::MatrixXcd right_vectors;   // matching columns
};

// `count` smallest singular pairs by block inverse iteration on M^H M using
// one LU of M. rel_tol controls when the sigma estimates count as settled;
// landscape scans get away with coarse values while converged modes ask for
// full precision. Falls back to a dense SVD when the iteration misbehaves.
SmallSvd smallest_svd(const Eigen::MatrixXcd& m, int count, double rel_tol = 1e-12,
                      int max_iters = 100) {
  if (!m.allFinite()) throw DecompositionFailure("smallest_svd: non-finite matrix entries");
  const Eigen::Index n = m.rows();
  count = std::clamp(count, 1, int(std::min<Eigen::Index>(4, n)));

  const auto full_fallback = [&]() {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
    SmallSvd out;
    const auto& sv = svd.singularValues();
    for (int i = 0; i < count; ++i) out.sigmas.push_back(sv(n - 1 - i));
    out.right_vectors = Eigen::MatrixXcd(n, count);
    for (int i = 0; i < count; ++i) out.right_vectors.col(i) = svd.matrixV().col(n - 1 - i);
    return out;
  };

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const Eigen::Index p = std::min<Eigen::Index>(n, std::max(count + 2, 3));
  Eigen::MatrixXcd x = deterministic_block(n, p);

  // rel_tol <= 0 requests a fixed sweep count with a single Rayleigh
  // extraction at the end. Landscape scans depend on this: the truncation
  // bias of a fixed-count iteration varies smoothly with k, while
  // early-exit checks would make it jump between neighboring evaluations
  // and poison finite-difference fits built on the values.
  Eigen::VectorXd prev = Eigen::VectorXd::Constant(count, -1.0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> small;
  Eigen::MatrixXcd x_checked;
  Eigen::VectorXd sig;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::MatrixXcd y = lu.adjoint().solve(x);
    Eigen::MatrixXcd z = lu.solve(y);
    if (!z.allFinite()) return full_fallback();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    x = qr.householderQ() * Eigen::MatrixXcd::Identity(n, p);

    const bool last = it == max_iters - 1;
    // the Rayleigh check costs a dense product; do it every other sweep
    if ((rel_tol > 0.0 && it % 2 == 0) || last) {
      small.compute(m * x, Eigen::ComputeFullV);
      x_checked = x;
      sig = small.singularValues().reverse().head(count);
      if (rel_tol > 0.0) {
        const double change = (sig - prev).cwiseAbs().maxCoeff();
        if (change <= rel_tol * std::max(1e-300, sig.maxCoeff())) break;
        prev = sig;
      }
    }
  }
  // The estimates settle from above as the subspace converges; the last
  // checked iterate is the best available answer even if the target was not
  // formally met.
  if (sig.size() == 0) return full_fallback();
  SmallSvd out;
  out.right_vectors = Eigen::MatrixXcd(n, count);
  for (int i = 0; i < count; ++i) {
    out.sigmas.push_back(sig(i));
    out.right_vectors.col(i) = x_checked * small.matrixV().col(p - 1 - i);
  }
  return out;
}

Eigen::VectorXcd phase_fixed(Eigen::VectorXcd v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(imax)) / best;
  v.normalize();
  return v;
}

}  // namespace

KernelValues green_kernel(cplx k, Vec2 r, Vec2 r_src, Vec2 nu_src) {
  const Vec2 diff = r - r_src;
  const double d = diff.norm();
  check_separation(d);
  const auto h = bessel::hankel1_01(k * d);
  KernelValues out;
  out.g = -0.25 * kI * h.h0;
  // grad_src |r - r_src| = -diff / d, and H0' = -H1
  const double ddot = -(diff.x * nu_src.x + diff.y * nu_src.y) / d;
  out.dg_dnu_src = 0.25 * kI * k * h.h1 * ddot;
  return out;
}

BoundaryOperator assemble(const BoundaryMesh& mesh, double n_inside, cplx kR) {
  if (!(n_inside > 1.0)) throw std::invalid_argument("assemble: need n_inside > 1");
  if (kR == cplx(0.0, 0.0)) throw std::invalid_argument("assemble: k must be nonzero");

  const int n = mesh.size();
  const cplx k_in = n_inside * kR;
  const cplx k_out = kR;
  Eigen::MatrixXcd m(2 * n, 2 * n);

  for (int i = 0; i < n; ++i) {
    const auto& node = mesh.nodes[i];
    // diagonal: analytic limits
    const cplx s_in = 0.5 * kI * h0_integral(k_in, 0.5 * node.ds);
    const cplx s_out = 0.5 * kI * h0_integral(k_out, 0.5 * node.ds);
    const cplx d_self = -node.curvature / (4.0 * kPi) * node.ds;
    m(i, i) = 0.5 + d_self;
    m(i, n + i) = -s_in;
    m(n + i, i) = 0.5 - d_self;
    m(n + i, n + i) = s_out;
  }

  for (int i = 0; i < n; ++i) {
    const auto& ni = mesh.nodes[i];
    for (int j = i + 1; j < n; ++j) {
      const auto& nj = mesh.nodes[j];
      const int gap = std::min(j - i, n - (j - i));  // cyclic distance
      if (gap <= kNearBand) {
        // near-singular zone: resolve the element with curved quadrature
        const PairEntries eij =
            integrate_element(mesh.shape, ni.position, k_in, k_out, nj.t_lo, nj.t_hi);
        const PairEntries eji =
            integrate_element(mesh.shape, nj.position, k_in, k_out, ni.t_lo, ni.t_hi);
        m(i, j) = eij.d_in;
        m(j, i) = eji.d_in;
        m(i, n + j) = -eij.s_in;
        m(j, n + i) = -eji.s_in;
        m(n + i, j) = -eij.d_out;
        m(n + j, i) = -eji.d_out;
        m(n + i, n + j) = eij.s_out;
        m(n + j, n + i) = eji.s_out;
        continue;
      }
      const Vec2 diff = ni.position - nj.position;  // x_i - y_j
      const double d = diff.norm();
      check_separation(d);
      const auto h_in = bessel::hankel1_01(k_in * d);
      const auto h_out = bessel::hankel1_01(k_out * d);

      const cplx phi_in = 0.25 * kI * h_in.h0;
      const cplx phi_out = 0.25 * kI * h_out.h0;
      // kernel of D at (x_i, y_j): -(i k/4) H1(k d) ((y_j - x_i).nu_j)/d
      const double dot_j = -(diff.x * nj.normal.x + diff.y * nj.normal.y) / d;
      const double dot_i = (diff.x * ni.normal.x + diff.y * ni.normal.y) / d;
      const cplx dk_in = -0.25 * kI * k_in * h_in.h1;
      const cplx dk_out = -0.25 * kI * k_out * h_out.h1;

      m(i, j) = dk_in * dot_j * nj.ds;
      m(j, i) = dk_in * dot_i * ni.ds;
      m(i, n + j) = -phi_in * nj.ds;
      m(j, n + i) = -phi_in * ni.ds;
      m(n + i, j) = -dk_out * dot_j * nj.ds;
      m(n + j, i) = -dk_out * dot_i * ni.ds;
      m(n + i, n + j) = phi_out * nj.ds;
      m(n + j, n + i) = phi_out * ni.ds;
    }
  }
  return BoundaryOperator(std::move(m), kR, n_inside, &mesh);
}

std::vector<double> smallest_singular_values(const BoundaryOperator& op, int count) {
  return smallest_svd(op.matrix(), count).sigmas;
}

Eigen::VectorXcd null_vector(const BoundaryOperator& op, double rel_tol) {
  const SmallSvd svd = smallest_svd(op.matrix(), 1);
  const double smax = sigma_max_estimate(op.matrix());
  if (svd.sigmas[0] > rel_tol * smax)
    throw NotSingular("null_vector: smallest singular value " +
                      std::to_string(svd.sigmas[0]) + " above tolerance");
  return phase_fixed(svd.right_vectors.col(0));
}

double sigma_min_at(const BoundaryMesh& mesh, double n_inside, cplx kR) {
  const BoundaryOperator op = assemble(mesh, n_inside, kR);
  const double smax = sigma_max_estimate(op.matrix());
  return smallest_svd(op.matrix(), 1, 0.0, 16).sigmas[0] / smax;
}

namespace {

struct Objective {
  const BoundaryMesh& mesh;
  double n_inside;
  int evaluations = 0;
  int budget = 200;
  double smax = 0.0;  // sigma_max varies slowly with k; estimate once

  double operator()(cplx k) {
    if (++evaluations > budget)
      throw NoConvergence("find_resonance: evaluation budget exhausted");
    const BoundaryOperator op = assemble(mesh, n_inside, k);
    if (smax == 0.0) smax = sigma_max_estimate(op.matrix());
    return smallest_svd(op.matrix(), 1, 0.0, 16).sigmas[0] / smax;
  }
};

// One quadratic-model polish step on sigma^2 over a 7-point cross. Offsets
// are nondimensionalized by delta and values by their maximum so the normal
// equations stay well conditioned at any scale. Returns the model minimum,
// or nullopt when the fit is not convex.
std::optional<cplx> quadratic_step(Objective& f, cplx center, double delta, double f_center) {
  const double unit[6][2] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0},
                             {0.0, -1.0}, {1.0, 1.0}, {-1.0, -1.0}};
  Eigen::MatrixXd a(7, 6);
  Eigen::VectorXd b(7);
  auto row = [&](int idx, double x, double y, double val) {
    a(idx, 0) = x * x;
    a(idx, 1) = y * y;
    a(idx, 2) = x * y;
    a(idx, 3) = x;
    a(idx, 4) = y;
    a(idx, 5) = 1.0;
    b(idx) = val * val;  // sigma^2 is smooth through a simple root
  };
  row(0, 0.0, 0.0, f_center);
  for (int i = 0; i < 6; ++i) {
    const cplx k = center + delta * cplx(unit[i][0], unit[i][1]);
    row(i + 1, unit[i][0], unit[i][1], f(k));
  }
  const double scale = b.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return std::nullopt;
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b / scale);
  // stationary point of c0 x^2 + c1 y^2 + c2 xy + c3 x + c4 y
  const double det = 4.0 * c(0) * c(1) - c(2) * c(2);
  if (!(det > 0.0) || c(0) <= 0.0) return std::nullopt;
  const double x = (-2.0 * c(1) * c(3) + c(2) * c(4)) / det;
  const double y = (-2.0 * c(0) * c(4) + c(2) * c(3)) / det;
  return center + delta * cplx(x, y);
}

cplx nelder_mead(Objective& f, cplx start, double step, double stop_diam, double stop_value) {
  struct Vertex {
    cplx k;
    double val;
  };
  std::array<Vertex, 3> s{{{start, f(start)},
                           {start + cplx(step, 0.0), f(start + cplx(step, 0.0))},
                           {start + cplx(0.0, step), f(start + cplx(0.0, step))}}};
  auto order = [&]() {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.val < b.val; });
  };
  order();
  for (int it = 0; it < 120; ++it) {
    if (s[0].val < stop_value) break;
    const double diam = std::max(std::abs(s[0].k - s[1].k),
                                 std::max(std::abs(s[0].k - s[2].k), std::abs(s[1].k - s[2].k)));
    if (diam < stop_diam) break;
    const cplx centroid = 0.5 * (s[0].k + s[1].k);
    const cplx refl = centroid + (centroid - s[2].k);
    const double f_refl = f(refl);
    if (f_refl < s[0].val) {
      const cplx exp_pt = centroid + 2.0 * (centroid - s[2].k);
      const double f_exp = f(exp_pt);
      s[2] = f_exp < f_refl ? Vertex{exp_pt, f_exp} : Vertex{refl, f_refl};
    } else if (f_refl < s[1].val) {
      s[2] = {refl, f_refl};
    } else {
      const cplx contr = centroid + 0.5 * (s[2].k - centroid);
      const double f_contr = f(contr);
      if (f_contr < s[2].val) {
        s[2] = {contr, f_contr};
      } else {
        s[1].k = s[0].k + 0.5 * (s[1].k - s[0].k);
        s[2].k = s[0].k + 0.5 * (s[2].k - s[0].k);
        s[1].val = f(s[1].k);
        s[2].val = f(s[2].k);
      }
    }
    order();
  }
  return s[0].k;
}

}  // namespace

ResonantMode find_resonance(const BoundaryMesh& mesh, double n_inside, cplx k_guess,
                            const SolveOptions& opts) {
  Objective objective{mesh, n_inside};
  objective.budget = opts.max_evaluations;

  auto inside_trust = [&](cplx k) { return std::abs(k - k_guess) <= opts.trust_radius; };

  double f_best = objective(k_guess);
  cplx best = k_guess;
  const bool trace = std::getenv("EPCAV_TRACE_SOLVE") != nullptr;

  // Stage 1: Nelder-Mead when the seed is not already inside a basin.
  if (f_best > 5e-2) {
    best = nelder_mead(objective, k_guess, opts.initial_step, 1e-7, 0.3 * opts.tol_sigma_rel);
    f_best = objective(best);
    if (!inside_trust(best))
      throw RootEscapedRegion("find_resonance: left the trust region during search");
  }

  // Stage 2: trust-region polish on the quadratic model of sigma^2. Where a
  // neighboring mode's singular-value branch crosses sigma_min, the
  // landscape has a kink and the fits degenerate; a short Nelder-Mead burst
  // walks past the kink, after which polishing resumes.
  double last_step = std::max(opts.initial_step, 1e-7);
  for (int attempt = 0; attempt < 3 && f_best > 0.0; ++attempt) {
    double delta = std::max(attempt == 0 ? opts.initial_step : 20.0 * opts.tol_step, 1e-7);
    bool stationary = false;
    for (int round = 0; round < 40; ++round) {
      if (trace)
        std::fprintf(stderr, "[polish] attempt=%d round=%d delta=%.3e f_best=%.6e\n", attempt,
                     round, delta, f_best);
      if (f_best < opts.tol_sigma_rel && last_step < opts.tol_step) {
        stationary = true;
        break;
      }
      const auto proposal = quadratic_step(objective, best, delta, f_best);
      if (!proposal) {
        // Below the sigma noise floor the fit degenerates; a converged value
        // with the sampling cross already this tight counts as stationary.
        if (f_best < opts.tol_sigma_rel && delta < 10.0 * opts.tol_step) {
          last_step = delta;
          stationary = true;
          break;
        }
        delta *= 0.35;
        if (delta < 1e-13) break;
        continue;
      }
      cplx step_vec = *proposal - best;
      double len = std::abs(step_vec);
      if (len > 8.0 * delta) {  // model minimum outside the sampled region
        step_vec *= 8.0 * delta / len;
        len = 8.0 * delta;
      }
      const cplx candidate = best + step_vec;
      const double f_new = objective(candidate);
      if (f_new < f_best) {
        best = candidate;
        f_best = f_new;
        last_step = len;
        delta = std::clamp(0.7 * len, 1e-12, 0.05);
      } else {
        delta *= 0.35;
        if (delta < 1e-13) break;
      }
      if (!inside_trust(best))
        throw RootEscapedRegion("find_resonance: left the trust region during polish");
    }
    if (stationary || f_best < opts.tol_sigma_rel) break;
    if (trace) std::fprintf(stderr, "[polish] attempt=%d stalled, NM burst\n", attempt);
    best = nelder_mead(objective, best, std::max(2.0 * opts.initial_step, 1e-5), 1e-9,
                       0.3 * opts.tol_sigma_rel);
    f_best = objective(best);
    if (!inside_trust(best))
      throw RootEscapedRegion("find_resonance: left the trust region during search");
  }

  if (f_best > opts.tol_sigma_rel)
    throw NoConvergence("find_resonance: sigma_min stalled at " + std::to_string(f_best));
  if (best.imag() > opts.im_ceiling)
    throw UnphysicalRoot("find_resonance: converged to Im(kR) = " +
                         std::to_string(best.imag()) + " > 0");

  const BoundaryOperator op = assemble(mesh, n_inside, best);
  const double smax = sigma_max_estimate(op.matrix());
  const SmallSvd svd = smallest_svd(op.matrix(), 2);

  ResonantMode mode;
  mode.k = {best};
  mode.densities = phase_fixed(svd.right_vectors.col(0));
  mode.sigma_min = svd.sigmas[0] / smax;
  mode.sigma_second = svd.sigmas[1] / smax;
  mode.params = {n_inside, mesh.shape.chi};
  if (svd.sigmas[1] < 10.0 * svd.sigmas[0]) {
    mode.second_densities = phase_fixed(svd.right_vectors.col(1));
  }
  return mode;
}

std::vector<ScanSample> sigma_scan(const BoundaryMesh& mesh, double n_inside, cplx lo,
                                   cplx hi, int n_re, int n_im) {
  std::vector<ScanSample> out;
  out.reserve(size_t(n_re) * n_im);
  for (int j = 0; j < n_im; ++j) {
    const double im = n_im == 1 ? lo.imag() : lo.imag() + (hi.imag() - lo.imag()) * j / (n_im - 1);
    for (int i = 0; i < n_re; ++i) {
      const double re =
          n_re == 1 ? lo.real() : lo.real() + (hi.real() - lo.real()) * i / (n_re - 1);
      out.push_back({cplx(re, im), sigma_min_at(mesh, n_inside, {re, im})});
    }
  }
  return out;
}

std::vector<ScanSample> scan_minima(const std::vector<ScanSample>& scan, int n_re, int n_im) {
  std::vector<ScanSample> minima;
  auto at = [&](int i, int j) -> const ScanSample& { return scan[size_t(j) * n_re + i]; };
  for (int j = 0; j < n_im; ++j) {
    for (int i = 0; i < n_re; ++i) {
      const double v = at(i, j).sigma_rel;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= n_re || jj >= n_im) continue;
          if (at(ii, jj).sigma_rel <= v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) minima.push_back(at(i, j));
    }
  }
  std::sort(minima.begin(), minima.end(),
            [](const ScanSample& a, const ScanSample& b) { return a.sigma_rel < b.sigma_rel; });
  return minima;
}

}  // namespace epcav::bem
