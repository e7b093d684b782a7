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

#include "sbmrd/models.h"

#include <bit>
#include <cmath>
#include <string>

#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

void CheckNodeCount(std::int64_t n) {
  if (n < 2) {
    throw InvalidParams("node count n=" + std::to_string(n) +
                        " must be at least 2");
  }
}

double CheckedProbability(double v, const std::string& what) {
  try {
    return ClampProbability(v, what.c_str());
  } catch (const DomainError& e) {
    throw InvalidParams(e.what());
  }
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> PairFromIndex(std::uint64_t index,
                                                      std::uint64_t n) {
  std::uint64_t i = 0;
  std::uint64_t row = n - 1;  // pairs in row i
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + index};
}

SbmParams ValidateSbm(SbmParams params) {
  CheckNodeCount(params.n);
  const std::size_t k = params.p.size();
  if (k == 0) throw InvalidParams("prior has no communities");
  if (params.w.order() != k) {
    throw InvalidParams("connection matrix has order " +
                        std::to_string(params.w.order()) + " but prior has " +
                        std::to_string(k) + " communities");
  }
  CompensatedSum total;
  for (double v : params.p.values()) total += v;
  if (std::abs(total.value() - 1.0) > kProbSlack) {
    throw InvalidParams("prior sums to " + std::to_string(total.value()));
  }
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = l; m < k; ++m) {
      if (params.w(l, m) != params.w(m, l)) {
        throw InvalidParams("connection matrix is not symmetric");
      }
      params.w.Set(l, m,
                   CheckedProbability(params.w(l, m),
                                      "connection probability W[" +
                                          std::to_string(l + 1) + "][" +
                                          std::to_string(m + 1) + "]"));
    }
  }
  return params;
}

InhomErParams ValidateInhomEr(InhomErParams params) {
  CheckNodeCount(params.n);
  const auto expected = static_cast<std::size_t>(PairCount(params.n));
  if (params.edge_probs.size() != expected) {
    throw InvalidParams("expected " + std::to_string(expected) +
                        " edge probabilities for n=" +
                        std::to_string(params.n) + ", got " +
                        std::to_string(params.edge_probs.size()));
  }
  for (std::size_t e = 0; e < expected; ++e) {
    params.edge_probs[e] = CheckedProbability(
        params.edge_probs[e], "edge probability #" + std::to_string(e));
  }
  return params;
}

ErParams ValidateEr(ErParams params) {
  CheckNodeCount(params.n);
  params.p = CheckedProbability(params.p, "edge probability");
  return params;
}

InhomErParams ToInhomogeneous(const ErParams& params) {
  return {params.n, std::vector<double>(
                        static_cast<std::size_t>(PairCount(params.n)),
                        params.p)};
}

SbmParams ToSbm(const ErParams& params) {
  return {params.n, ProbVector({1.0}),
          SymMatrix(std::vector<std::vector<double>>{{params.p}})};
}

LabelVector::LabelVector(std::vector<std::uint32_t> labels, std::size_t k)
    : labels_(std::move(labels)), k_(k) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= k_) {
      throw InvalidParams("label of vertex " + std::to_string(i) +
                          " is outside [1, " + std::to_string(k_) + "]");
    }
  }
}

LabelVector LabelVector::FromOneBased(const std::vector<std::int64_t>& labels,
                                      std::size_t k) {
  std::vector<std::uint32_t> zero_based(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > static_cast<std::int64_t>(k)) {
      throw InvalidParams("label " + std::to_string(labels[i]) +
                          " of vertex " + std::to_string(i) +
                          " is outside [1, " + std::to_string(k) + "]");
    }
    zero_based[i] = static_cast<std::uint32_t>(labels[i] - 1);
  }
  return LabelVector(std::move(zero_based), k);
}

Graph::Graph(std::int64_t n)
    : n_(n),
      pairs_(static_cast<std::uint64_t>(PairCount(n))),
      words_((pairs_ + 63) / 64, 0) {}

bool Graph::HasEdge(std::int64_t i, std::int64_t j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return Edge(PairIndex(i, j, n_));
}

void Graph::SetEdge(std::int64_t i, std::int64_t j, bool present) {
  if (i == j) throw InvalidParams("self-loops are not representable");
  if (i > j) std::swap(i, j);
  SetEdge(PairIndex(i, j, n_), present);
}

std::uint64_t Graph::EdgeCount() const {
  std::uint64_t count = 0;
  for (std::uint64_t w : words_) count += std::popcount(w);
  return count;
}

double InhomogeneousErEntropy(const InhomErParams& params) {
  CompensatedSum h;
  for (double p : params.edge_probs) h += BinaryEntropy(p);
  return h.value();
}

double ErEntropy(const ErParams& params) {
  return PairCount(params.n) * BinaryEntropy(params.p);
}

double SbmConditionalEntropy(const SbmParams& params) {
  return PairCount(params.n) * QuadraticForm(params.p, EntropyMatrix(params.w));
}

EntropyInterval SbmEntropyInterval(const SbmParams& params) {
  const double lower = SbmConditionalEntropy(params);
  return {lower, lower + static_cast<double>(params.n) *
                             ShannonEntropy(params.p)};
}

}  // namespace sbmrd
