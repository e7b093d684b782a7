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

#include "sbmrd/numerics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sbmrd/errors.h"

namespace sbmrd {

double ClampProbability(double t, const char* what) {
  if (!(t >= -kProbSlack && t <= 1.0 + kProbSlack)) {
    throw DomainError(std::string(what) + " " + std::to_string(t) +
                      " is outside [0, 1]");
  }
  return std::clamp(t, 0.0, 1.0);
}

CompensatedSum& CompensatedSum::operator+=(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
  return *this;
}

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidParams("probability vector is empty");
  CompensatedSum total;
  for (double& v : values_) {
    try {
      v = ClampProbability(v, "prior entry");
    } catch (const DomainError& e) {
      throw InvalidParams(e.what());
    }
    total += v;
  }
  if (std::abs(total.value() - 1.0) > kProbSlack) {
    throw InvalidParams("prior sums to " + std::to_string(total.value()) +
                        ", expected 1");
  }
}

SymMatrix::SymMatrix(std::size_t order)
    : order_(order), entries_(order * order, 0.0) {}

SymMatrix::SymMatrix(const std::vector<std::vector<double>>& rows)
    : order_(rows.size()), entries_(rows.size() * rows.size()) {
  for (std::size_t l = 0; l < order_; ++l) {
    if (rows[l].size() != order_) {
      throw DimensionError("matrix row " + std::to_string(l) + " has " +
                           std::to_string(rows[l].size()) +
                           " entries, expected " + std::to_string(order_));
    }
    std::copy(rows[l].begin(), rows[l].end(), entries_.begin() + l * order_);
  }
  for (std::size_t l = 0; l < order_; ++l) {
    for (std::size_t m = l + 1; m < order_; ++m) {
      if ((*this)(l, m) != (*this)(m, l)) {
        throw InvalidParams("matrix is not symmetric at (" +
                            std::to_string(l + 1) + "," +
                            std::to_string(m + 1) + ")");
      }
    }
  }
}

void SymMatrix::Set(std::size_t l, std::size_t m, double value) {
  entries_[l * order_ + m] = value;
  entries_[m * order_ + l] = value;
}

std::vector<std::vector<double>> SymMatrix::Rows() const {
  std::vector<std::vector<double>> rows(order_);
  for (std::size_t l = 0; l < order_; ++l) {
    rows[l].assign(entries_.begin() + l * order_,
                   entries_.begin() + (l + 1) * order_);
  }
  return rows;
}

double BinaryEntropy(double t) {
  t = ClampProbability(t, "binary entropy argument");
  if (t == 0.0 || t == 1.0) return 0.0;
  return -t * std::log2(t) - (1.0 - t) * std::log2(1.0 - t);
}

double ShannonEntropy(const ProbVector& p) {
  CompensatedSum h;
  for (double v : p.values()) {
    if (v > 0.0) h += -v * std::log2(v);
  }
  return h.value();
}

SymMatrix EntropyMatrix(const SymMatrix& w) {
  SymMatrix out(w.order());
  for (std::size_t l = 0; l < w.order(); ++l) {
    for (std::size_t m = l; m < w.order(); ++m) {
      out.Set(l, m, BinaryEntropy(w(l, m)));
    }
  }
  return out;
}

double QuadraticForm(const ProbVector& p, const SymMatrix& m) {
  if (p.size() != m.order()) {
    throw DimensionError("vector of length " + std::to_string(p.size()) +
                         " against matrix of order " +
                         std::to_string(m.order()));
  }
  CompensatedSum acc;
  for (std::size_t l = 0; l < p.size(); ++l) {
    for (std::size_t r = 0; r < p.size(); ++r) {
      acc += p[l] * p[r] * m(l, r);
    }
  }
  return acc.value();
}

double ClippedSum(std::span<const ClippedTerm> terms, double level) {
  CompensatedSum acc;
  for (const ClippedTerm& t : terms) acc += t.weight * std::min(t.cap, level);
  return acc.value();
}

namespace {

// Validates the terms and returns sum weight * cap.
double CheckTerms(std::span<const ClippedTerm> terms, double target) {
  CompensatedSum total;
  for (const ClippedTerm& t : terms) {
    if (!(t.cap >= 0.0) || !(t.weight >= 0.0)) {
      throw DomainError("piecewise terms need nonnegative caps and weights");
    }
    total += t.weight * t.cap;
  }
  if (!(target >= 0.0)) throw DomainError("piecewise target is negative");
  if (target > total.value() + kProbSlack) {
    throw InfeasibleError("piecewise target " + std::to_string(target) +
                              " exceeds the reachable total " +
                              std::to_string(total.value()),
                          total.value());
  }
  return total.value();
}

}  // namespace

double SolveMonotonePiecewise(std::span<const ClippedTerm> terms,
                              double target) {
  const double total = CheckTerms(terms, target);
  if (target == 0.0) return 0.0;

  std::vector<ClippedTerm> active;
  active.reserve(terms.size());
  for (const ClippedTerm& t : terms) {
    if (t.weight > 0.0 && t.cap > 0.0) active.push_back(t);
  }
  std::sort(active.begin(), active.end(),
            [](const ClippedTerm& a, const ClippedTerm& b) {
              return a.cap < b.cap;
            });
  if (active.empty()) return 0.0;
  if (target >= total) return active.back().cap;

  // Suffix sums of the weights still growing with the level.
  std::vector<double> free_weight(active.size() + 1, 0.0);
  for (std::size_t i = active.size(); i-- > 0;) {
    free_weight[i] = free_weight[i + 1] + active[i].weight;
  }
  // On [cap_{i-1}, cap_i] the sum is saturated + level * free_weight[i].
  CompensatedSum saturated;
  double prev_cap = 0.0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const double at_cap = saturated.value() + active[i].cap * free_weight[i];
    if (at_cap >= target) {
      const double level = (target - saturated.value()) / free_weight[i];
      return std::clamp(level, prev_cap, active[i].cap);
    }
    saturated += active[i].weight * active[i].cap;
    prev_cap = active[i].cap;
  }
  return active.back().cap;
}

double SolveMonotonePiecewiseBisect(std::span<const ClippedTerm> terms,
                                    double target, double abs_tol) {
  const double total = CheckTerms(terms, target);
  double hi = 0.0;
  for (const ClippedTerm& t : terms) {
    if (t.weight > 0.0) hi = std::max(hi, t.cap);
  }
  target = std::min(target, total);
  double lo = 0.0;
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (ClippedSum(terms, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace sbmrd
