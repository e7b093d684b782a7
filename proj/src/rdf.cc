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

#include "sbmrd/rdf.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "sbmrd/errors.h"
#include "sbmrd/numerics.h"
#include "sbmrd/waterfill.h"

namespace sbmrd {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckDistortion(double distortion) {
  if (!std::isfinite(distortion) || distortion < 0.0) {
    throw DomainError("distortion must be a finite nonnegative number");
  }
}

}  // namespace

RdCurvePoint SbmConditionalRdf(const SbmParams& params, double distortion) {
  CheckDistortion(distortion);
  const double pairs = PairCount(params.n);
  RdCurvePoint point{distortion, distortion / pairs, 0.0, 0.0};
  if (distortion >= SbmDistortionBoundary(params)) {
    point.water_level = SbmSaturationLevel(params);
    return point;
  }
  const SbmAllocation alloc = SolveSbmWaterfill(params, distortion);
  CompensatedSum per_pair;
  for (std::size_t l = 0; l < params.k(); ++l) {
    for (std::size_t m = 0; m < params.k(); ++m) {
      const double weight = params.p[l] * params.p[m];
      if (weight == 0.0) continue;
      per_pair += weight * (BinaryEntropy(params.w(l, m)) -
                            BinaryEntropy(alloc.dstar(l, m)));
    }
  }
  point.rate_bits = std::max(0.0, pairs * per_pair.value());
  point.water_level = alloc.mu;
  return point;
}

RateInterval SbmRdfInterval(const SbmParams& params, double distortion) {
  CheckDistortion(distortion);
  if (distortion >= SbmIndependenceBoundary(params)) return {0.0, 0.0};
  const double lower = SbmConditionalRdf(params, distortion).rate_bits;
  return {lower,
          lower + static_cast<double>(params.n) * ShannonEntropy(params.p)};
}

RdCurvePoint InhomogeneousErRdf(const InhomErParams& params,
                                double distortion) {
  CheckDistortion(distortion);
  RdCurvePoint point{distortion, distortion / PairCount(params.n), 0.0, 0.0};
  if (distortion >= ErDistortionBoundary(params)) {
    point.water_level = ErSaturationLevel(params);
    return point;
  }
  const ErAllocation alloc = SolveErWaterfill(params, distortion);
  CompensatedSum rate;
  for (std::size_t e = 0; e < alloc.d.size(); ++e) {
    rate += BinaryEntropy(params.edge_probs[e]) - BinaryEntropy(alloc.d[e]);
  }
  point.rate_bits = std::max(0.0, rate.value());
  point.water_level = alloc.lambda;
  return point;
}

RdCurvePoint ErRdf(const ErParams& params, double distortion) {
  CheckDistortion(distortion);
  const double pairs = PairCount(params.n);
  const double cap = std::min(params.p, 1.0 - params.p);
  const double per_edge = distortion / pairs;
  RdCurvePoint point{distortion, per_edge, 0.0, cap};
  if (per_edge < cap) {
    point.rate_bits = std::max(
        0.0, pairs * (BinaryEntropy(params.p) - BinaryEntropy(per_edge)));
    point.water_level = per_edge;
  }
  return point;
}

RdCurvePoint EvaluateRdf(const ModelParams& params, double distortion) {
  return std::visit(
      Overloaded{
          [&](const SbmParams& p) { return SbmConditionalRdf(p, distortion); },
          [&](const ErParams& p) { return ErRdf(p, distortion); },
          [&](const InhomErParams& p) {
            return InhomogeneousErRdf(p, distortion);
          }},
      params);
}

double ZeroRateBoundary(const ModelParams& params) {
  return std::visit(
      Overloaded{
          [](const SbmParams& p) { return SbmDistortionBoundary(p); },
          [](const ErParams& p) {
            return PairCount(p.n) * std::min(p.p, 1.0 - p.p);
          },
          [](const InhomErParams& p) { return ErDistortionBoundary(p); }},
      params);
}

double ModelPairCount(const ModelParams& params) {
  return std::visit([](const auto& p) { return PairCount(p.n); }, params);
}

std::vector<double> UniformGrid(const ModelParams& params,
                                std::size_t points) {
  if (points == 0) throw InvalidParams("a curve needs at least one point");
  std::vector<double> grid(points, 0.0);
  if (points == 1) return grid;
  const double boundary = ZeroRateBoundary(params);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = boundary * static_cast<double>(i) /
              static_cast<double>(points - 1);
  }
  grid.back() = boundary;
  return grid;
}

std::vector<RdCurvePoint> RdfCurve(const ModelParams& params,
                                   std::span<const double> grid,
                                   unsigned threads) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw InvalidParams("grid value " + std::to_string(grid[i]) +
                          " is not a nonnegative distortion");
    }
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw InvalidParams("grid values must be sorted in ascending order");
    }
  }
  std::vector<RdCurvePoint> curve(grid.size());
  threads = std::max(1u, std::min<unsigned>(threads, grid.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      curve[i] = EvaluateRdf(params, grid[i]);
    }
    return curve;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < grid.size(); i += threads) {
            curve[i] = EvaluateRdf(params, grid[i]);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return curve;
}

}  // namespace sbmrd
