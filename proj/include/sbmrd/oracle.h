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
// Numerical rate-distortion oracle based on Blahut-Arimoto iterations. It
// never looks at the closed forms or the water-filling solver; it only
// knows the source distribution and the distortion matrix.

#ifndef SBMRD_ORACLE_H_
#define SBMRD_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sbmrd/models.h"
#include "sbmrd/numerics.h"

namespace sbmrd {

// Finite source with a distortion matrix; reproduction alphabet has
// `reproduction_size` letters.
struct DiscreteRdProblem {
  std::vector<double> source_probs;
  std::size_t reproduction_size = 0;
  // source_probs.size() x reproduction_size, row-major.
  std::vector<double> distortion;

  std::size_t source_size() const { return source_probs.size(); }
  double Distortion(std::size_t x, std::size_t y) const {
    return distortion[x * reproduction_size + y];
  }
};

// Throws InvalidParams unless probabilities sum to one and distortions are
// finite and nonnegative.
void ValidateProblem(const DiscreteRdProblem& problem);

// Product of independent Bernoulli(edge_probs[e]) coordinates over
// {0, 1}^m with Hamming distortion; symbol bit e is coordinate e.
DiscreteRdProblem ProductBernoulliProblem(std::span<const double> edge_probs);

struct OracleResult {
  double rate_bits = 0.0;
  double achieved_distortion = 0.0;
  int iterations = 0;
  bool converged = false;
  double slope = 0.0;
  // Largest sweep-to-sweep increase of rate + slope * distortion. Alternating
  // minimisation never increases it, so this stays at rounding level.
  double max_objective_increase = 0.0;
  // Q(y | x), source_size x reproduction_size, row-major.
  std::vector<double> transition;
};

struct OracleOptions {
  // Stop once the rate moves less than this between sweeps.
  double tol = 1e-10;
  int max_iter = 10000;
};

// Blahut-Arimoto at Lagrange slope `slope` >= 0 (bits per unit distortion):
// the fixed point minimising I(X; Y) + slope * E d(X, Y), from a uniform
// reproduction distribution. Non-convergence is reported through
// `converged`, never thrown.
OracleResult BlahutArimoto(const DiscreteRdProblem& problem, double slope,
                           const OracleOptions& options = {});

// Sweeps a slope family to reach a target distortion.
//
// Each graph oracle bisects the slope until the achieved distortion matches
// `distortion`. Near a kink of the water-filling allocation (some class
// exactly at its cap) the iterations converge sublinearly, so the default
// sweep budget is larger than for a single BlahutArimoto call.
struct GraphOracleOptions {
  OracleOptions ba{1e-10, 200000};
  double slope_tol = 1e-12;
};

// Rate-distortion of m <= 6 independent edges by Blahut-Arimoto on the
// joint alphabet {0, 1}^m. Throws InvalidParams for m outside [1, 6],
// InfeasibleError for D beyond sum min(p, 1 - p), NonConvergenceError if the
// final run did not converge.
OracleResult JointGraphRdfOracle(std::span<const double> edge_probs,
                                 double distortion,
                                 const GraphOracleOptions& options = {});

struct ConditionalOracleResult {
  // Rate and distortion averaged over label vectors (absolute distortion).
  OracleResult aggregate;
  // Empirical P(E != Y | labels l, m) under the oracle's channels.
  SymMatrix pair_crossover;
  std::size_t label_vectors = 0;
};

// Label-conditioned SBM rate for n <= 4, k <= 2: enumerates every label
// vector, runs Blahut-Arimoto on each conditional product source at a
// common slope and bisects that slope until the label-averaged distortion
// hits `distortion`.
ConditionalOracleResult ConditionalSbmOracle(
    const SbmParams& params, double distortion,
    const GraphOracleOptions& options = {});

}  // namespace sbmrd

#endif  // SBMRD_ORACLE_H_
