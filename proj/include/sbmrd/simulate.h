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
// Sampling of labeled graphs and Monte Carlo simulation of the test channel
// that attains the rate-distortion bound.
//
// Randomness is counter based: the uniform consumed by vertex or pair
// `index` in trial `trial` for purpose `stream` is Philox4x32-10 applied to
// (index, trial, stream) under a key derived from the seed. Nothing is
// carried between draws, so results do not depend on evaluation order or
// thread count.

#ifndef SBMRD_SIMULATE_H_
#define SBMRD_SIMULATE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sbmrd/models.h"
#include "sbmrd/waterfill.h"

namespace sbmrd {

// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

enum class RngStream : std::uint32_t {
  kLabels = 1,
  kEdges = 2,
  kChannel = 3,
};

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  // Uniform on [0, 1) with 53 random bits.
  double Uniform(RngStream stream, std::uint64_t index) const;
  RngSpec ForTrial(std::uint64_t t) const { return {seed, t}; }
};

// Forward form of the backward binary symmetric channel with crossover d
// and reproduction marginal q1 = (w - d) / (1 - 2d).
struct TestChannel {
  double crossover = 0.0;
  double reproduction_marginal = 0.0;
  double p_one_given_one = 1.0;   // P(Y = 1 | E = 1)
  double p_one_given_zero = 0.0;  // P(Y = 1 | E = 0)
};

// Throws InvalidParams when d exceeds min(w, 1 - w). d = 0 (including
// w in {0, 1}) copies the edge; d = 1/2 draws Y ~ Bernoulli(1/2)
// independently of E.
TestChannel MakeTestChannel(double w, double d);

LabelVector SampleLabels(const SbmParams& params, const RngSpec& rng);

Graph SampleGraph(const LabelVector& labels, const SymMatrix& w,
                  const RngSpec& rng);
Graph SampleGraph(const InhomErParams& params, const RngSpec& rng);

// Passes each edge with labels (l, m) through MakeTestChannel(w_lm, d*_lm).
Graph ApplyTestChannel(const Graph& graph, const LabelVector& labels,
                       const SbmAllocation& alloc, const SymMatrix& w,
                       const RngSpec& rng);
Graph ApplyTestChannel(const Graph& graph, const InhomErParams& params,
                       const ErAllocation& alloc, const RngSpec& rng);

// Number of differing pair indicators. Throws DimensionError on size
// mismatch.
std::uint64_t HammingDistortion(const Graph& a, const Graph& b);

struct PairTally {
  std::uint64_t edges = 0;       // vertex pairs observed with this label pair
  std::uint64_t flips = 0;       // pairs with E != Y
  std::uint64_t reproduced = 0;  // pairs with Y = 1
};

struct SimReport {
  std::uint64_t trials = 0;
  double mean_distortion = 0.0;
  // Standard error of the mean; empty for a single trial.
  std::optional<double> std_error;
  double target_distortion = 0.0;
  double analytic_rate = 0.0;
  // Block-model runs only: k x k, row-major, tallies of unordered label
  // pairs stored at (min, max).
  std::vector<PairTally> pair_tallies;
  SymMatrix dstar;
};

// Samples `trials` (labels, graph) pairs, passes each through the test
// channel of SolveSbmWaterfill(params, D) and averages the Hamming
// distortion. `threads` only changes the schedule, never the output.
SimReport MonteCarloDistortion(const SbmParams& params, double distortion,
                               std::uint64_t trials, const RngSpec& rng,
                               unsigned threads = 1);
SimReport MonteCarloDistortion(const InhomErParams& params, double distortion,
                               std::uint64_t trials, const RngSpec& rng,
                               unsigned threads = 1);

}  // namespace sbmrd

#endif  // SBMRD_SIMULATE_H_
