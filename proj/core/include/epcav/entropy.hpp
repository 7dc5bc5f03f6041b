// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

/// \file entropy.hpp
///
/// Information-theoretic functionals over intensity distributions: Shannon
/// entropy S = -sum rho_i ln rho_i (natural log, 0 ln 0 = 0), the
/// Kullback-Leibler divergence D(P||Q) = sum P_i ln(P_i/Q_i), branch-split
/// differences, and the line-profile diagnostics built on them.
///
/// All sums run in ascending value order with compensated accumulation, so
/// results are bit-identical under index permutations and thread counts.

#include <optional>
#include <string>
#include <vector>

#include "epcav/field.hpp"
#include "epcav/types.hpp"

namespace epcav::entropy {

struct EntropyRecord {
  double s = 0.0;          // nats
  int n_states = 0;        // N; absolute entropies only compare at equal N
  double s_reduced = 0.0;  // s - ln(N) <= 0
  std::string mode_tag;
  ParameterPoint params;
};

EntropyRecord shannon_entropy(const field::IntensityField& rho);

struct KLRecord {
  double d_kl = 0.0;  // nats, >= 0
  bool infinite = false;  // some P_i > 0 where Q_i = 0
  ParameterPoint from;  // P
  ParameterPoint to;    // Q
};

/// D(P||Q); throws MeshMismatch when the fields live on different grids.
/// A support violation is reported in the record, not thrown.
KLRecord kl_divergence(const field::IntensityField& p, const field::IntensityField& q);

/// Delta S_i = S_i - (S_1 + S_2)/2; the two components sum to zero.
std::pair<double, double> entropy_split(const EntropyRecord& s1, const EntropyRecord& s2);

/// delta S(chi) = S(n_minus, chi) - S(n_plus, chi) for one continuation
/// branch sampled on a common chi grid across the candidate line.
struct DiscontinuityProfile {
  std::vector<double> chi;
  std::vector<double> delta_s;
};
DiscontinuityProfile discontinuity_profile(const std::vector<double>& chi,
                                           const std::vector<double>& s_minus,
                                           const std::vector<double>& s_plus);

/// Per-chi KL divergences between the two interacting modes' fields on the
/// weak side (n_minus) and strong side (n_plus), plus their difference.
struct KLProfiles {
  std::vector<double> chi;
  std::vector<double> d_weak;
  std::vector<double> d_strong;
  std::vector<double> d_diff;  // |d_weak - d_strong|
};
KLProfiles kl_profiles(const std::vector<double>& chi,
                       const std::vector<std::pair<field::IntensityField,
                                                   field::IntensityField>>& weak_pairs,
                       const std::vector<std::pair<field::IntensityField,
                                                   field::IntensityField>>& strong_pairs);

}  // namespace epcav::entropy
