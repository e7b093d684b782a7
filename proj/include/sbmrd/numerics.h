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
// Scalar and small-matrix primitives shared by every other module. All
// entropies are in bits.

#ifndef SBMRD_NUMERICS_H_
#define SBMRD_NUMERICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace sbmrd {

// Inputs this close outside [0, 1] are treated as rounding noise and clamped.
inline constexpr double kProbSlack = 1e-12;

// Returns `t` clamped into [0, 1]; throws DomainError when `t` is further
// than kProbSlack outside the interval (or NaN). `what` names the quantity
// in the message.
double ClampProbability(double t, const char* what = "probability");

// Neumaier-compensated accumulator. Result is independent of the magnitude
// ordering up to the last couple of ulps.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

// A probability vector: entries in [0, 1] summing to one within kProbSlack.
class ProbVector {
 public:
  ProbVector() = default;
  // Throws InvalidParams on an empty vector, a bad entry or a bad sum.
  explicit ProbVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Dense k x k matrix with entries(l, m) == entries(m, l) bit for bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  // Zero matrix of the given order.
  explicit SymMatrix(std::size_t order);
  // Throws DimensionError unless `rows` is square, InvalidParams unless it
  // is exactly symmetric.
  explicit SymMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t order() const { return order_; }
  double operator()(std::size_t l, std::size_t m) const {
    return entries_[l * order_ + m];
  }
  // Writes both (l, m) and (m, l).
  void Set(std::size_t l, std::size_t m, double value);

  std::vector<std::vector<double>> Rows() const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<double> entries_;
};

// -t log2 t - (1 - t) log2(1 - t), with h2(0) = h2(1) = 0.
double BinaryEntropy(double t);

// Shannon entropy of a distribution, in bits.
double ShannonEntropy(const ProbVector& p);

// Elementwise BinaryEntropy.
SymMatrix EntropyMatrix(const SymMatrix& w);

// sum_{l,m} p_l p_m M(l, m).
double QuadraticForm(const ProbVector& p, const SymMatrix& m);

// One term of a clipped-linear sum: contributes weight * min(cap, level).
struct ClippedTerm {
  double cap;
  double weight;
};

// Smallest level >= 0 with sum_i weight_i * min(cap_i, level) == target,
// solved exactly on the sorted breakpoints. Throws DomainError for negative
// caps, weights or target, InfeasibleError when the target exceeds
// sum weight * cap by more than kProbSlack (smaller excess is clamped).
double SolveMonotonePiecewise(std::span<const ClippedTerm> terms,
                              double target);

// Bisection on the same equation to `abs_tol` on the level. Kept as a
// cross-check for SolveMonotonePiecewise.
double SolveMonotonePiecewiseBisect(std::span<const ClippedTerm> terms,
                                    double target, double abs_tol = 1e-12);

// sum_i weight_i * min(cap_i, level), compensated.
double ClippedSum(std::span<const ClippedTerm> terms, double level);

// Binomial(n, 2) as a double.
inline double PairCount(long long n) {
  return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
}

}  // namespace sbmrd

#endif  // SBMRD_NUMERICS_H_
