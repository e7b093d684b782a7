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

#include "sbmrd/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

// Slope used for D = 0: 2^-256 per unit distortion is far below double
// rounding of any rate we report.
constexpr double kLosslessSlope = 256.0;
constexpr double kMaxSlope = 1024.0;

double Cap(double p) { return std::min(p, 1.0 - p); }

// Bisects the slope so that `eval(slope).achieved distortion` hits
// `target`. D(s) is nonincreasing in s and D(0) is the distortion of a
// uniform reproduction, which dominates every feasible target.
template <class Eval, class Project>
auto MatchDistortion(Eval eval, Project project, double target,
                     double slope_tol) -> decltype(eval(0.0)) {
  if (target <= 0.0) return eval(kLosslessSlope);

  double lo = 0.0;
  double hi = 1.0;
  auto best = eval(hi);
  while (project(best).achieved_distortion > target && hi < kMaxSlope) {
    lo = hi;
    hi *= 2.0;
    best = eval(hi);
  }
  double best_gap = std::abs(project(best).achieved_distortion - target);
  const double exact = 1e-15 * std::max(1.0, target);
  while (hi - lo > slope_tol * std::max(1.0, hi) && best_gap > exact) {
    const double mid = 0.5 * (lo + hi);
    auto result = eval(mid);
    const double achieved = project(result).achieved_distortion;
    if (achieved > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double gap = std::abs(achieved - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(result);
    }
  }
  return best;
}

void CheckFeasible(double distortion, double boundary) {
  if (!std::isfinite(distortion) || distortion < 0.0) {
    throw DomainError("distortion must be a finite nonnegative number");
  }
  if (distortion > boundary + kProbSlack * std::max(1.0, boundary)) {
    throw InfeasibleError("distortion " + std::to_string(distortion) +
                              " exceeds the zero-rate boundary " +
                              std::to_string(boundary),
                          boundary);
  }
}

}  // namespace

void ValidateProblem(const DiscreteRdProblem& problem) {
  if (problem.source_probs.empty() || problem.reproduction_size == 0) {
    throw InvalidParams("rate-distortion problem has an empty alphabet");
  }
  if (problem.distortion.size() !=
      problem.source_size() * problem.reproduction_size) {
    throw InvalidParams("distortion matrix has the wrong size");
  }
  CompensatedSum total;
  for (double p : problem.source_probs) {
    if (!(p >= 0.0)) throw InvalidParams("negative source probability");
    total += p;
  }
  if (std::abs(total.value() - 1.0) > 1e-9) {
    throw InvalidParams("source probabilities sum to " +
                        std::to_string(total.value()));
  }
  for (double d : problem.distortion) {
    if (!std::isfinite(d) || d < 0.0) {
      throw InvalidParams("distortions must be finite and nonnegative");
    }
  }
}

DiscreteRdProblem ProductBernoulliProblem(std::span<const double> edge_probs) {
  const std::size_t m = edge_probs.size();
  const std::size_t size = std::size_t{1} << m;
  DiscreteRdProblem problem;
  problem.reproduction_size = size;
  problem.source_probs.resize(size);
  problem.distortion.resize(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    double prob = 1.0;
    for (std::size_t e = 0; e < m; ++e) {
      prob *= ((x >> e) & 1u) ? edge_probs[e] : 1.0 - edge_probs[e];
    }
    problem.source_probs[x] = prob;
    for (std::size_t y = 0; y < size; ++y) {
      problem.distortion[x * size + y] =
          static_cast<double>(std::popcount(x ^ y));
    }
  }
  return problem;
}

OracleResult BlahutArimoto(const DiscreteRdProblem& problem, double slope,
                           const OracleOptions& options) {
  ValidateProblem(problem);
  if (!(slope >= 0.0)) throw DomainError("slope must be nonnegative");
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");

  const std::size_t rows = problem.source_size();
  const std::size_t cols = problem.reproduction_size;
  std::vector<double> kernel(rows * cols);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    kernel[i] = std::exp2(-slope * problem.distortion[i]);
  }

  std::vector<double> q(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> q_next(cols);
  std::vector<double> log_partition(rows);
  OracleResult result;
  result.slope = slope;
  result.transition.assign(rows * cols, 0.0);

  double prev_rate = 0.0;
  double prev_objective = 0.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    std::fill(q_next.begin(), q_next.end(), 0.0);
    CompensatedSum distortion;
    for (std::size_t x = 0; x < rows; ++x) {
      double* row = &result.transition[x * cols];
      const double* k = &kernel[x * cols];
      double z = 0.0;
      for (std::size_t y = 0; y < cols; ++y) {
        row[y] = q[y] * k[y];
        z += row[y];
      }
      log_partition[x] = std::log2(z);
      const double px = problem.source_probs[x];
      for (std::size_t y = 0; y < cols; ++y) {
        row[y] /= z;
        q_next[y] += px * row[y];
        distortion += px * row[y] * problem.Distortion(x, y);
      }
    }
    // With Q = q K / Z, I(X; Y) = sum_y q'(y) log2(q(y) / q'(y))
    //                             - s E d - sum_x p(x) log2 Z(x).
    CompensatedSum rate;
    for (std::size_t y = 0; y < cols; ++y) {
      if (q_next[y] > 0.0) rate += q_next[y] * std::log2(q[y] / q_next[y]);
    }
    rate += -slope * distortion.value();
    for (std::size_t x = 0; x < rows; ++x) {
      if (problem.source_probs[x] > 0.0) {
        rate += -problem.source_probs[x] * log_partition[x];
      }
    }
    const double r = std::max(0.0, rate.value());
    const double objective = r + slope * distortion.value();
    if (it > 1) {
      result.max_objective_increase =
          std::max(result.max_objective_increase, objective - prev_objective);
    }
    result.rate_bits = r;
    result.achieved_distortion = distortion.value();
    result.iterations = it;
    q.swap(q_next);
    if (it > 1 && std::abs(r - prev_rate) < options.tol) {
      result.converged = true;
      break;
    }
    prev_rate = r;
    prev_objective = objective;
  }
  return result;
}

OracleResult JointGraphRdfOracle(std::span<const double> edge_probs,
                                 double distortion,
                                 const GraphOracleOptions& options) {
  if (edge_probs.empty() || edge_probs.size() > 6) {
    throw InvalidParams("joint oracle handles 1 to 6 edges, got " +
                        std::to_string(edge_probs.size()));
  }
  CompensatedSum boundary;
  for (double p : edge_probs) {
    boundary += Cap(ClampProbability(p, "edge probability"));
  }
  CheckFeasible(distortion, boundary.value());

  const DiscreteRdProblem problem = ProductBernoulliProblem(edge_probs);
  OracleResult result = MatchDistortion(
      [&](double s) { return BlahutArimoto(problem, s, options.ba); },
      [](const OracleResult& r) -> const OracleResult& { return r; },
      std::min(distortion, boundary.value()), options.slope_tol);
  if (!result.converged) {
    throw NonConvergenceError("Blahut-Arimoto did not converge within " +
                              std::to_string(options.ba.max_iter) +
                              " sweeps");
  }
  return result;
}

ConditionalOracleResult ConditionalSbmOracle(
    const SbmParams& params, double distortion,
    const GraphOracleOptions& options) {
  const std::size_t k = params.k();
  const auto n = static_cast<std::size_t>(params.n);
  if (params.n < 2 || params.n > 4 || k > 2) {
    throw InvalidParams(
        "conditional oracle is limited to n <= 4 and k <= 2 (got n=" +
        std::to_string(params.n) + ", k=" + std::to_string(k) + ")");
  }
  const std::size_t edges = n * (n - 1) / 2;

  // Every label vector with its probability and per-edge label pairs.
  struct LabelCase {
    double prob;
    std::vector<std::pair<std::size_t, std::size_t>> edge_labels;
    std::size_t problem;  // index into `problems`
  };
  std::vector<LabelCase> cases;
  std::vector<DiscreteRdProblem> problems;
  std::map<std::vector<double>, std::size_t> problem_of;
  std::size_t vectors = 1;
  for (std::size_t i = 0; i < n; ++i) vectors *= k;
  CompensatedSum boundary;
  for (std::size_t code = 0; code < vectors; ++code) {
    std::vector<std::size_t> labels(n);
    double prob = 1.0;
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rest % k;
      rest /= k;
      prob *= params.p[labels[i]];
    }
    LabelCase c{prob, {}, 0};
    std::vector<double> probs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        c.edge_labels.emplace_back(labels[i], labels[j]);
        probs.push_back(params.w(labels[i], labels[j]));
        boundary += prob * Cap(probs.back());
      }
    }
    auto [it, inserted] = problem_of.try_emplace(probs, problems.size());
    if (inserted) problems.push_back(ProductBernoulliProblem(probs));
    c.problem = it->second;
    cases.push_back(std::move(c));
  }
  CheckFeasible(distortion, boundary.value());

  auto eval = [&](double s) {
    std::vector<OracleResult> runs;
    runs.reserve(problems.size());
    for (const DiscreteRdProblem& problem : problems) {
      runs.push_back(BlahutArimoto(problem, s, options.ba));
    }
    ConditionalOracleResult out;
    out.label_vectors = cases.size();
    out.aggregate.slope = s;
    out.aggregate.converged = true;
    CompensatedSum rate;
    CompensatedSum dist;
    std::vector<CompensatedSum> flips(k * k);
    std::vector<CompensatedSum> mass(k * k);
    for (const LabelCase& c : cases) {
      const OracleResult& run = runs[c.problem];
      const DiscreteRdProblem& problem = problems[c.problem];
      rate += c.prob * run.rate_bits;
      dist += c.prob * run.achieved_distortion;
      out.aggregate.iterations =
          std::max(out.aggregate.iterations, run.iterations);
      out.aggregate.converged = out.aggregate.converged && run.converged;
      out.aggregate.max_objective_increase = std::max(
          out.aggregate.max_objective_increase, run.max_objective_increase);
      if (c.prob == 0.0) continue;
      const std::size_t size = problem.source_size();
      for (std::size_t e = 0; e < edges; ++e) {
        double flip = 0.0;
        for (std::size_t x = 0; x < size; ++x) {
          for (std::size_t y = 0; y < size; ++y) {
            if (((x ^ y) >> e) & 1u) {
              flip += problem.source_probs[x] * run.transition[x * size + y];
            }
          }
        }
        auto [l, m] = c.edge_labels[e];
        if (l > m) std::swap(l, m);
        flips[l * k + m] += c.prob * flip;
        mass[l * k + m] += c.prob;
      }
    }
    out.aggregate.rate_bits = rate.value();
    out.aggregate.achieved_distortion = dist.value();
    out.pair_crossover = SymMatrix(k);
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t m = l; m < k; ++m) {
        const double total = mass[l * k + m].value();
        out.pair_crossover.Set(
            l, m, total > 0.0 ? flips[l * k + m].value() / total : NAN);
      }
    }
    return out;
  };

  ConditionalOracleResult result = MatchDistortion(
      eval,
      [](const ConditionalOracleResult& r) -> const OracleResult& {
        return r.aggregate;
      },
      std::min(distortion, boundary.value()), options.slope_tol);
  if (!result.aggregate.converged) {
    throw NonConvergenceError("Blahut-Arimoto did not converge within " +
                              std::to_string(options.ba.max_iter) +
                              " sweeps");
  }
  return result;
}

}  // namespace sbmrd
