// Copyright 2026 The sbmrd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Reverse water-filling of a Hamming distortion budget over edge classes.
//
// Each class c (a label pair for the block model, a vertex pair for the
// inhomogeneous graph) gets crossover d_c = min(cap_c, level) with
// cap_c = min(w_c, 1 - w_c); the level is the unique value for which the
// weighted crossovers add up to the budget. Block-model weights are
// p_l p_m and the budget is D / Binomial(n, 2); graph weights are 1 and the
// budget is D.
//
// Conventions:
//   * Classes with cap 0 (w in {0, 1}) get d = 0 and take no part in the
//     solve.
//   * Label pairs touching an empty community (p_l = 0) get d = cap.
//   * At the zero-rate boundary every cap is active and any level above the
//     largest cap solves the system; the largest participating cap is
//     reported.
//   * Budgets up to kProbSlack * max(1, boundary) above the boundary are
//     clamped to it.

#ifndef SBMRD_WATERFILL_H_
#define SBMRD_WATERFILL_H_

#include <vector>

#include "sbmrd/models.h"
#include "sbmrd/numerics.h"

namespace sbmrd {

struct SbmAllocation {
  SymMatrix dstar;
  double mu = 0.0;
  // D / Binomial(n, 2).
  double normalized_distortion = 0.0;
};

struct ErAllocation {
  // Per vertex pair, PairIndex order.
  std::vector<double> d;
  double lambda = 0.0;
};

// Binomial(n, 2) sum_{l,m} p_l p_m min(w, 1 - w): largest D with a positive
// label-conditioned rate.
double SbmDistortionBoundary(const SbmParams& params);

// Binomial(n, 2) min(sum p_l p_m w, sum p_l p_m (1 - w)): beyond this the
// reconstruction can be independent of the graph and even the unconditional
// rate is 0.
double SbmIndependenceBoundary(const SbmParams& params);

// Level reported when the whole SBM budget is spent (all caps active).
double SbmSaturationLevel(const SbmParams& params);

// sum_{i<j} min(p_ij, 1 - p_ij).
double ErDistortionBoundary(const InhomErParams& params);

double ErSaturationLevel(const InhomErParams& params);

// Throws DomainError for negative or non-finite D, InfeasibleError (carrying
// the boundary) for D beyond the boundary.
SbmAllocation SolveSbmWaterfill(const SbmParams& params, double distortion);
ErAllocation SolveErWaterfill(const InhomErParams& params, double distortion);

// Optimality certificate recomputed from an allocation.
//
// With nu = ln(1 / level - 1), every class is assigned the multiplier
// lambda_c = weight_c * (ln((1 - d_c) / d_c) - nu) that makes the
// stationarity condition hold exactly. The allocation is optimal iff all
// multipliers are nonnegative, lambda_c * (d_c - cap_c) vanishes and the
// budget is met with equality.
struct KktCertificate {
  // +infinity when the level is 0 (lossless end; nothing to certify).
  double nu = 0.0;
  // max(0, -min_c lambda_c, -nu).
  double max_multiplier_violation = 0.0;
  // max_c |lambda_c * (d_c - cap_c)|.
  double max_slackness_residual = 0.0;
  // |weighted sum - budget| / budget (absolute when the budget is 0).
  double constraint_residual = 0.0;
  // Worst violation of d_c <= min(cap_c, level).
  double max_cap_excess = 0.0;

  bool Holds(double tol) const {
    return max_multiplier_violation <= tol && max_slackness_residual <= tol &&
           constraint_residual <= tol && max_cap_excess <= tol;
  }
};

KktCertificate CertifySbmAllocation(const SbmParams& params,
                                    const SbmAllocation& alloc,
                                    double distortion);
KktCertificate CertifyErAllocation(const InhomErParams& params,
                                   const ErAllocation& alloc,
                                   double distortion);

}  // namespace sbmrd

#endif  // SBMRD_WATERFILL_H_
