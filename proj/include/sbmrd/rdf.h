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
// Closed-form rate-distortion functions under Hamming edge distortion.
// Distortion arguments are absolute edge counts; rates are in bits.

#ifndef SBMRD_RDF_H_
#define SBMRD_RDF_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "sbmrd/models.h"

namespace sbmrd {

struct RdCurvePoint {
  double distortion_abs = 0.0;
  double distortion_per_edge = 0.0;
  double rate_bits = 0.0;
  // mu for the block model, lambda for the graph models.
  double water_level = 0.0;
};

struct RateInterval {
  double lower = 0.0;
  double upper = 0.0;
};

using ModelParams = std::variant<SbmParams, ErParams, InhomErParams>;

// Rate of the block-model graph with the labels known at both ends:
// Binomial(n, 2) p^T [h2(W) - h2(D*)] p, and 0 from the distortion boundary
// on.
RdCurvePoint SbmConditionalRdf(const SbmParams& params, double distortion);

// Bracket on the label-free rate: [conditional rate, conditional + n H(p)].
// Both ends are 0 once D reaches the independence boundary.
RateInterval SbmRdfInterval(const SbmParams& params, double distortion);

RdCurvePoint InhomogeneousErRdf(const InhomErParams& params,
                                double distortion);

// Binomial(n, 2) [h2(p) - h2(D / Binomial(n, 2))] up to
// D = Binomial(n, 2) min(p, 1 - p), 0 beyond.
RdCurvePoint ErRdf(const ErParams& params, double distortion);

RdCurvePoint EvaluateRdf(const ModelParams& params, double distortion);

// Largest D at which the model's (conditional) rate is still positive.
double ZeroRateBoundary(const ModelParams& params);

// Binomial(n, 2) of the model.
double ModelPairCount(const ModelParams& params);

// `points` evenly spaced distortions covering [0, ZeroRateBoundary]; a
// single point is D = 0. Throws InvalidParams for points == 0.
std::vector<double> UniformGrid(const ModelParams& params, std::size_t points);

// Evaluates the model at every grid value, in grid order. The grid must be
// nonnegative and nondecreasing (InvalidParams otherwise). Points are
// independent; `threads` > 1 evaluates them concurrently with identical
// output.
std::vector<RdCurvePoint> RdfCurve(const ModelParams& params,
                                   std::span<const double> grid,
                                   unsigned threads = 1);

}  // namespace sbmrd

#endif  // SBMRD_RDF_H_
