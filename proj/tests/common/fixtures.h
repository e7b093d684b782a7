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
// Shared fixtures. Reference numbers come from
// tests/oracles/reference_values.py (40-digit mpmath, brute-force water
// levels) and are frozen here.

#ifndef SBMRD_TESTS_COMMON_FIXTURES_H_
#define SBMRD_TESTS_COMMON_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sbmrd/models.h"
#include "sbmrd/numerics.h"

namespace sbmrd::testing {

namespace ref {
inline constexpr double kH2Of02 = 0.72192809488736235;
inline constexpr double kH2Of01 = 0.46899559358928122;
inline constexpr double kH2Of0075 = 0.38431154412649709;
inline constexpr double kBlock3QuadForm = 0.70762644558138525;
inline constexpr double kBlock3LabelEntropy = 1.5709505944546686;
inline constexpr double kBlock3CondEntropy = 3502.750905627857;
inline constexpr double kBlock3SumPpw = 0.251;
inline constexpr double kBlock3Boundary = 1242.45;
inline constexpr double kBlock3Rate495 = 1181.222717360915;
inline constexpr double kBlock3Mu495 = 0.1;
inline constexpr double kBlock3Rate200 = 2294.2497758057916;
inline constexpr double kBlock3Mu200 = 0.040404040404040404;
inline constexpr double kBlock3Rate1000 = 131.14824897790582;
inline constexpr double kBlock3Mu1000 = 0.32947118241235888;
inline constexpr double kInhomEntropy = 2.1909236884766436;
inline constexpr double kInhomLambda = 0.075;
inline constexpr double kInhomRate = 1.1126678109776984;
inline constexpr double kErN2Rate = 0.25293250129808113;
inline constexpr double kSmallSbmRate = 0.68568772988009911;
inline constexpr double kSmallSbmMu = 0.1;
}  // namespace ref

inline SbmParams Block3() {
  SbmParams s;
  s.n = 100;
  s.p = ProbVector({0.4, 0.3, 0.3});
  s.w = SymMatrix(std::vector<std::vector<double>>{
      {0.5, 0.2, 0.1}, {0.2, 0.5, 0.1}, {0.1, 0.1, 0.4}});
  return ValidateSbm(s);
}

inline SbmParams SmallSbm() {
  SbmParams s;
  s.n = 3;
  s.p = ProbVector({0.5, 0.5});
  s.w = SymMatrix(
      std::vector<std::vector<double>>{{0.3, 0.1}, {0.1, 0.4}});
  return ValidateSbm(s);
}

// Random prior on k communities with entries bounded away from 0.
inline ProbVector RandomPrior(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (double& x : p) total += (x = u(rng));
  for (double& x : p) x /= total;
  // Push the rounding error into the largest entry.
  double sum = 0.0;
  for (double x : p) sum += x;
  *std::max_element(p.begin(), p.end()) += 1.0 - sum;
  return ProbVector(p);
}

inline SymMatrix RandomW(std::mt19937_64& rng, std::size_t k, double lo = 0.0,
                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  SymMatrix w(k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = l; m < k; ++m) w.Set(l, m, u(rng));
  }
  return w;
}

inline SbmParams RandomSbm(std::mt19937_64& rng, std::int64_t n,
                           std::size_t k) {
  SbmParams s;
  s.n = n;
  s.p = RandomPrior(rng, k);
  s.w = RandomW(rng, k);
  return ValidateSbm(s);
}

inline double RelErr(double got, double want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

}  // namespace sbmrd::testing

#endif  // SBMRD_TESTS_COMMON_FIXTURES_H_
