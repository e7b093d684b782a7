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

#include "sbmrd/waterfill.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

double Cap(double w) { return std::min(w, 1.0 - w); }

// Rejects negative D; clamps D into [0, boundary] within the slack.
double CheckBudget(double distortion, double boundary) {
  if (!std::isfinite(distortion) || distortion < 0.0) {
    throw DomainError("distortion must be a finite nonnegative number");
  }
  if (distortion > boundary + kProbSlack * std::max(1.0, boundary)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "distortion " << distortion
        << " exceeds the zero-rate boundary " << boundary;
    throw InfeasibleError(msg.str(), boundary);
  }
  return std::min(distortion, boundary);
}

// One edge class as seen by the certificate.
struct ClassState {
  double weight;
  double cap;
  double d;
};

KktCertificate Certify(const std::vector<ClassState>& classes, double level,
                       double budget) {
  KktCertificate cert;
  CompensatedSum spent;
  for (const ClassState& c : classes) spent += c.weight * c.d;
  cert.constraint_residual =
      std::abs(spent.value() - budget) / (budget > 0.0 ? budget : 1.0);

  for (const ClassState& c : classes) {
    if (c.weight > 0.0 && c.cap > 0.0) {
      cert.max_cap_excess =
          std::max(cert.max_cap_excess, c.d - std::min(c.cap, level));
    }
  }
  cert.max_cap_excess = std::max(cert.max_cap_excess, 0.0);

  if (level <= 0.0) {
    cert.nu = std::numeric_limits<double>::infinity();
    return cert;
  }
  cert.nu = std::log(1.0 / level - 1.0);
  cert.max_multiplier_violation = std::max(0.0, -cert.nu);
  for (const ClassState& c : classes) {
    if (c.weight <= 0.0 || c.cap <= 0.0) continue;
    const double lambda = c.weight * (std::log((1.0 - c.d) / c.d) - cert.nu);
    cert.max_multiplier_violation =
        std::max(cert.max_multiplier_violation, -lambda);
    cert.max_slackness_residual = std::max(cert.max_slackness_residual,
                                           std::abs(lambda * (c.d - c.cap)));
  }
  return cert;
}

}  // namespace

double SbmDistortionBoundary(const SbmParams& params) {
  SymMatrix caps(params.k());
  for (std::size_t l = 0; l < params.k(); ++l) {
    for (std::size_t m = l; m < params.k(); ++m) {
      caps.Set(l, m, Cap(params.w(l, m)));
    }
  }
  return PairCount(params.n) * QuadraticForm(params.p, caps);
}

double SbmIndependenceBoundary(const SbmParams& params) {
  const double edge_mass = QuadraticForm(params.p, params.w);
  return PairCount(params.n) * std::min(edge_mass, 1.0 - edge_mass);
}

double SbmSaturationLevel(const SbmParams& params) {
  double level = 0.0;
  for (std::size_t l = 0; l < params.k(); ++l) {
    for (std::size_t m = l; m < params.k(); ++m) {
      if (params.p[l] > 0.0 && params.p[m] > 0.0) {
        level = std::max(level, Cap(params.w(l, m)));
      }
    }
  }
  return level;
}

double ErDistortionBoundary(const InhomErParams& params) {
  CompensatedSum total;
  for (double p : params.edge_probs) total += Cap(p);
  return total.value();
}

double ErSaturationLevel(const InhomErParams& params) {
  double level = 0.0;
  for (double p : params.edge_probs) level = std::max(level, Cap(p));
  return level;
}

SbmAllocation SolveSbmWaterfill(const SbmParams& params, double distortion) {
  const double boundary = SbmDistortionBoundary(params);
  distortion = CheckBudget(distortion, boundary);
  const std::size_t k = params.k();
  const double pairs = PairCount(params.n);

  // Unordered label pairs; off-diagonal ones carry both orderings.
  std::vector<ClippedTerm> terms;
  terms.reserve(k * (k + 1) / 2);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = l; m < k; ++m) {
      const double weight = (l == m ? 1.0 : 2.0) * params.p[l] * params.p[m];
      const double cap = Cap(params.w(l, m));
      if (weight > 0.0 && cap > 0.0) terms.push_back({cap, weight});
    }
  }

  SbmAllocation alloc;
  alloc.normalized_distortion = distortion / pairs;
  if (distortion >= boundary) {
    alloc.mu = SbmSaturationLevel(params);
  } else {
    alloc.mu = SolveMonotonePiecewise(
        terms, std::min(alloc.normalized_distortion, boundary / pairs));
  }

  alloc.dstar = SymMatrix(k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = l; m < k; ++m) {
      const double cap = Cap(params.w(l, m));
      const bool empty = params.p[l] == 0.0 || params.p[m] == 0.0;
      alloc.dstar.Set(l, m, empty ? cap : std::min(cap, alloc.mu));
    }
  }
  return alloc;
}

ErAllocation SolveErWaterfill(const InhomErParams& params, double distortion) {
  const double boundary = ErDistortionBoundary(params);
  distortion = CheckBudget(distortion, boundary);

  std::vector<ClippedTerm> terms;
  terms.reserve(params.edge_probs.size());
  for (double p : params.edge_probs) {
    if (Cap(p) > 0.0) terms.push_back({Cap(p), 1.0});
  }

  ErAllocation alloc;
  alloc.lambda = distortion >= boundary
                     ? ErSaturationLevel(params)
                     : SolveMonotonePiecewise(terms, distortion);
  alloc.d.resize(params.edge_probs.size());
  for (std::size_t e = 0; e < alloc.d.size(); ++e) {
    alloc.d[e] = std::min(Cap(params.edge_probs[e]), alloc.lambda);
  }
  return alloc;
}

KktCertificate CertifySbmAllocation(const SbmParams& params,
                                    const SbmAllocation& alloc,
                                    double distortion) {
  std::vector<ClassState> classes;
  for (std::size_t l = 0; l < params.k(); ++l) {
    for (std::size_t m = 0; m < params.k(); ++m) {
      classes.push_back({params.p[l] * params.p[m], Cap(params.w(l, m)),
                         alloc.dstar(l, m)});
    }
  }
  return Certify(classes, alloc.mu, distortion / PairCount(params.n));
}

KktCertificate CertifyErAllocation(const InhomErParams& params,
                                   const ErAllocation& alloc,
                                   double distortion) {
  std::vector<ClassState> classes;
  classes.reserve(params.edge_probs.size());
  for (std::size_t e = 0; e < params.edge_probs.size(); ++e) {
    classes.push_back({1.0, Cap(params.edge_probs[e]), alloc.d[e]});
  }
  return Certify(classes, alloc.lambda, distortion);
}

}  // namespace sbmrd
