// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "epcav/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epcav/errors.hpp"

namespace epcav::entropy {

namespace {

// Compensated sum in ascending value order: permutation-invariant and
// accurate to ~2 ulp per term.
double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0, comp = 0.0;
  for (double v : terms) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

EntropyRecord shannon_entropy(const field::IntensityField& rho) {
  std::vector<double> terms;
  terms.reserve(rho.rho.size());
  for (double p : rho.rho) {
    if (p > 0.0) terms.push_back(-p * std::log(p));
  }
  EntropyRecord rec;
  rec.s = stable_sum(std::move(terms));
  rec.n_states = static_cast<int>(rho.rho.size());
  rec.s_reduced = rec.s - std::log(double(rec.n_states));
  return rec;
}

KLRecord kl_divergence(const field::IntensityField& p, const field::IntensityField& q) {
  if (!p.spec.same_grid(q.spec))
    throw MeshMismatch("kl_divergence: fields live on different interior meshes");
  KLRecord rec;
  std::vector<double> terms;
  terms.reserve(p.rho.size());
  for (size_t i = 0; i < p.rho.size(); ++i) {
    const double pi = p.rho[i];
    if (pi <= 0.0) continue;  // 0 log 0 convention
    const double qi = q.rho[i];
    if (qi <= 0.0) {
      rec.infinite = true;
      rec.d_kl = std::numeric_limits<double>::infinity();
      return rec;
    }
    terms.push_back(pi * std::log(pi / qi));
  }
  rec.d_kl = std::max(0.0, stable_sum(std::move(terms)));
  return rec;
}

std::pair<double, double> entropy_split(const EntropyRecord& s1, const EntropyRecord& s2) {
  const double avg = 0.5 * (s1.s + s2.s);
  return {s1.s - avg, s2.s - avg};
}

DiscontinuityProfile discontinuity_profile(const std::vector<double>& chi,
                                           const std::vector<double>& s_minus,
                                           const std::vector<double>& s_plus) {
  if (chi.empty() || chi.size() != s_minus.size() || chi.size() != s_plus.size())
    throw MissingSamples("discontinuity_profile: chi/s_minus/s_plus sizes differ or empty");
  DiscontinuityProfile out;
  out.chi = chi;
  out.delta_s.reserve(chi.size());
  for (size_t i = 0; i < chi.size(); ++i) {
    if (!std::isfinite(s_minus[i]) || !std::isfinite(s_plus[i]))
      throw MissingSamples("discontinuity_profile: non-finite entropy sample at chi = " +
                           std::to_string(chi[i]));
    out.delta_s.push_back(s_minus[i] - s_plus[i]);
  }
  return out;
}

KLProfiles kl_profiles(
    const std::vector<double>& chi,
    const std::vector<std::pair<field::IntensityField, field::IntensityField>>& weak_pairs,
    const std::vector<std::pair<field::IntensityField, field::IntensityField>>& strong_pairs) {
  if (chi.empty() || chi.size() != weak_pairs.size() || chi.size() != strong_pairs.size())
    throw MissingSamples("kl_profiles: per-chi pair lists do not match the chi grid");
  KLProfiles out;
  out.chi = chi;
  for (size_t i = 0; i < chi.size(); ++i) {
    const double dw = kl_divergence(weak_pairs[i].first, weak_pairs[i].second).d_kl;
    const double ds = kl_divergence(strong_pairs[i].first, strong_pairs[i].second).d_kl;
    out.d_weak.push_back(dw);
    out.d_strong.push_back(ds);
    out.d_diff.push_back(std::abs(dw - ds));
  }
  return out;
}

}  // namespace epcav::entropy
