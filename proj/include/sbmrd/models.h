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
// Graph sources (stochastic block model, inhomogeneous and homogeneous
// Erdos-Renyi), their validation, the labeled-graph representation and the
// entropy formulas.
//
// Vertex pairs {i, j}, 0 <= i < j < n, are laid out row by row:
//
//   PairIndex(i, j, n) = i * n - i * (i + 1) / 2 + (j - i - 1)
//
// Graph bits, inhomogeneous edge-probability arrays and the graph text
// format all use this order.

#ifndef SBMRD_MODELS_H_
#define SBMRD_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sbmrd/numerics.h"

namespace sbmrd {

inline constexpr std::uint64_t PairIndex(std::uint64_t i, std::uint64_t j,
                                         std::uint64_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Inverse of PairIndex.
std::pair<std::uint64_t, std::uint64_t> PairFromIndex(std::uint64_t index,
                                                      std::uint64_t n);

struct SbmParams {
  std::int64_t n = 0;
  ProbVector p;
  SymMatrix w;

  std::size_t k() const { return p.size(); }
};

struct InhomErParams {
  std::int64_t n = 0;
  // Binomial(n, 2) probabilities in PairIndex order.
  std::vector<double> edge_probs;
};

struct ErParams {
  std::int64_t n = 0;
  double p = 0.0;
};

// Each returns its argument (probabilities clamped per kProbSlack) or throws
// InvalidParams naming the first violated invariant.
SbmParams ValidateSbm(SbmParams params);
InhomErParams ValidateInhomEr(InhomErParams params);
ErParams ValidateEr(ErParams params);

// Inhomogeneous model with every pair at probability params.p.
InhomErParams ToInhomogeneous(const ErParams& params);
// Single-community block model equivalent to G(n, p).
SbmParams ToSbm(const ErParams& params);

// Community assignment of n vertices; 0-based internally.
class LabelVector {
 public:
  LabelVector() = default;
  // Throws InvalidParams if any label is >= k.
  LabelVector(std::vector<std::uint32_t> labels, std::size_t k);
  // From 1-based labels as they appear in files.
  static LabelVector FromOneBased(const std::vector<std::int64_t>& labels,
                                  std::size_t k);

  std::size_t size() const { return labels_.size(); }
  std::size_t k() const { return k_; }
  std::uint32_t operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t k_ = 0;
};

// Simple undirected graph on n labeled vertices, one bit per vertex pair.
class Graph {
 public:
  Graph() = default;
  // Empty graph.
  explicit Graph(std::int64_t n);

  std::int64_t n() const { return n_; }
  std::uint64_t pair_count() const { return pairs_; }

  bool Edge(std::uint64_t pair) const {
    return (words_[pair >> 6] >> (pair & 63)) & 1u;
  }
  void SetEdge(std::uint64_t pair, bool present) {
    const std::uint64_t bit = std::uint64_t{1} << (pair & 63);
    if (present) {
      words_[pair >> 6] |= bit;
    } else {
      words_[pair >> 6] &= ~bit;
    }
  }
  bool HasEdge(std::int64_t i, std::int64_t j) const;
  void SetEdge(std::int64_t i, std::int64_t j, bool present);

  std::uint64_t EdgeCount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::int64_t n_ = 0;
  std::uint64_t pairs_ = 0;
  std::vector<std::uint64_t> words_;
};

double InhomogeneousErEntropy(const InhomErParams& params);
double ErEntropy(const ErParams& params);

// Binomial(n, 2) p^T h2(W) p: entropy of the graph given the labels.
double SbmConditionalEntropy(const SbmParams& params);

struct EntropyInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// Bracket on the unconditional SBM graph entropy,
// H(G|X) <= H(G) <= H(G|X) + n H(p).
EntropyInterval SbmEntropyInterval(const SbmParams& params);

}  // namespace sbmrd

#endif  // SBMRD_MODELS_H_
