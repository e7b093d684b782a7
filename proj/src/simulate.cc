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

#include "sbmrd/simulate.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "sbmrd/errors.h"
#include "sbmrd/rdf.h"

namespace sbmrd {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

bool PassEdge(bool edge, const TestChannel& channel, double u) {
  return u < (edge ? channel.p_one_given_one : channel.p_one_given_zero);
}

struct TrialResult {
  std::uint64_t distortion = 0;
  std::vector<PairTally> tallies;
};

// Runs `trial(t)` for every t and keeps results in trial order.
std::vector<TrialResult> RunTrials(
    std::uint64_t trials, unsigned threads,
    const std::function<TrialResult(std::uint64_t)>& trial) {
  std::vector<TrialResult> results(trials);
  threads = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, trials)));
  if (threads == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) results[t] = trial(t);
    return results;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t t = w; t < trials; t += threads) {
            results[t] = trial(t);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void Summarize(const std::vector<TrialResult>& results, SimReport& report) {
  report.trials = results.size();
  CompensatedSum sum;
  for (const TrialResult& r : results) {
    sum += static_cast<double>(r.distortion);
  }
  const double n = static_cast<double>(results.size());
  report.mean_distortion = sum.value() / n;
  if (results.size() > 1) {
    CompensatedSum squares;
    for (const TrialResult& r : results) {
      const double dev = static_cast<double>(r.distortion) -
                         report.mean_distortion;
      squares += dev * dev;
    }
    report.std_error = std::sqrt(squares.value() / (n - 1.0) / n);
  }
  for (const TrialResult& r : results) {
    if (report.pair_tallies.size() < r.tallies.size()) {
      report.pair_tallies.resize(r.tallies.size());
    }
    for (std::size_t i = 0; i < r.tallies.size(); ++i) {
      report.pair_tallies[i].edges += r.tallies[i].edges;
      report.pair_tallies[i].flips += r.tallies[i].flips;
      report.pair_tallies[i].reproduced += r.tallies[i].reproduced;
    }
  }
}

void CheckTrials(std::uint64_t trials) {
  if (trials == 0) throw InvalidParams("at least one trial is required");
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

double RngSpec::Uniform(RngStream stream, std::uint64_t index) const {
  const auto out = Philox4x32(
      {static_cast<std::uint32_t>(index),
       static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(trial),
       static_cast<std::uint32_t>(stream) ^
           (static_cast<std::uint32_t>(trial >> 32) << 8)},
      {static_cast<std::uint32_t>(seed),
       static_cast<std::uint32_t>(seed >> 32)});
  const std::uint64_t bits =
      (std::uint64_t{out[0]} << 32 | out[1]) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

TestChannel MakeTestChannel(double w, double d) {
  w = ClampProbability(w, "edge probability");
  const double cap = std::min(w, 1.0 - w);
  if (!(d >= 0.0) || d > cap + kProbSlack) {
    throw InvalidParams("crossover " + std::to_string(d) +
                        " exceeds min(w, 1 - w) = " + std::to_string(cap));
  }
  d = std::min(d, cap);
  TestChannel channel;
  channel.crossover = d;
  if (d == 0.0) {
    channel.reproduction_marginal = w;
    return channel;
  }
  if (d == 0.5) {
    channel.reproduction_marginal = 0.5;
    channel.p_one_given_one = 0.5;
    channel.p_one_given_zero = 0.5;
    return channel;
  }
  // Bayes inversion of P(E | Y) = BSC(d) with P(Y = 1) = q1.
  const double q1 = ClampProbability((w - d) / (1.0 - 2.0 * d),
                                     "reproduction marginal");
  channel.reproduction_marginal = q1;
  channel.p_one_given_one =
      ClampProbability((1.0 - d) * q1 / w, "P(Y=1|E=1)");
  channel.p_one_given_zero =
      ClampProbability(d * q1 / (1.0 - w), "P(Y=1|E=0)");
  return channel;
}

LabelVector SampleLabels(const SbmParams& params, const RngSpec& rng) {
  const std::size_t k = params.k();
  std::vector<double> cdf(k);
  CompensatedSum acc;
  for (std::size_t l = 0; l < k; ++l) {
    acc += params.p[l];
    cdf[l] = acc.value();
  }
  std::size_t last_positive = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (params.p[l] > 0.0) last_positive = l;
  }
  std::vector<std::uint32_t> labels(static_cast<std::size_t>(params.n));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double u = rng.Uniform(RngStream::kLabels, i);
    std::size_t chosen = last_positive;  // absorbs cdf rounding below 1
    for (std::size_t l = 0; l < k; ++l) {
      if (params.p[l] > 0.0 && u < cdf[l]) {
        chosen = l;
        break;
      }
    }
    labels[i] = static_cast<std::uint32_t>(chosen);
  }
  return LabelVector(std::move(labels), k);
}

Graph SampleGraph(const LabelVector& labels, const SymMatrix& w,
                  const RngSpec& rng) {
  if (labels.k() != w.order()) {
    throw DimensionError("labels use " + std::to_string(labels.k()) +
                         " communities, matrix has order " +
                         std::to_string(w.order()));
  }
  const auto n = static_cast<std::int64_t>(labels.size());
  Graph g(n);
  std::uint64_t pair = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j, ++pair) {
      const double prob = w(labels[i], labels[j]);
      g.SetEdge(pair, rng.Uniform(RngStream::kEdges, pair) < prob);
    }
  }
  return g;
}

Graph SampleGraph(const InhomErParams& params, const RngSpec& rng) {
  Graph g(params.n);
  for (std::uint64_t pair = 0; pair < g.pair_count(); ++pair) {
    g.SetEdge(pair,
              rng.Uniform(RngStream::kEdges, pair) < params.edge_probs[pair]);
  }
  return g;
}

Graph ApplyTestChannel(const Graph& graph, const LabelVector& labels,
                       const SbmAllocation& alloc, const SymMatrix& w,
                       const RngSpec& rng) {
  const std::size_t k = w.order();
  if (labels.size() != static_cast<std::size_t>(graph.n()) ||
      labels.k() != k || alloc.dstar.order() != k) {
    throw DimensionError("graph, labels and allocation do not match");
  }
  std::vector<TestChannel> channels(k * k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = 0; m < k; ++m) {
      channels[l * k + m] = MakeTestChannel(w(l, m), alloc.dstar(l, m));
    }
  }
  Graph out(graph.n());
  std::uint64_t pair = 0;
  for (std::int64_t i = 0; i < graph.n(); ++i) {
    for (std::int64_t j = i + 1; j < graph.n(); ++j, ++pair) {
      const TestChannel& c = channels[labels[i] * k + labels[j]];
      out.SetEdge(pair, PassEdge(graph.Edge(pair), c,
                                 rng.Uniform(RngStream::kChannel, pair)));
    }
  }
  return out;
}

Graph ApplyTestChannel(const Graph& graph, const InhomErParams& params,
                       const ErAllocation& alloc, const RngSpec& rng) {
  if (graph.pair_count() != params.edge_probs.size() ||
      alloc.d.size() != params.edge_probs.size()) {
    throw DimensionError("graph, parameters and allocation do not match");
  }
  Graph out(graph.n());
  for (std::uint64_t pair = 0; pair < graph.pair_count(); ++pair) {
    const TestChannel c =
        MakeTestChannel(params.edge_probs[pair], alloc.d[pair]);
    out.SetEdge(pair, PassEdge(graph.Edge(pair), c,
                               rng.Uniform(RngStream::kChannel, pair)));
  }
  return out;
}

std::uint64_t HammingDistortion(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) {
    throw DimensionError("graphs have " + std::to_string(a.n()) + " and " +
                         std::to_string(b.n()) + " vertices");
  }
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    count += std::popcount(a.words()[i] ^ b.words()[i]);
  }
  return count;
}

SimReport MonteCarloDistortion(const SbmParams& params, double distortion,
                               std::uint64_t trials, const RngSpec& rng,
                               unsigned threads) {
  CheckTrials(trials);
  const SbmAllocation alloc = SolveSbmWaterfill(params, distortion);
  const std::size_t k = params.k();

  const auto results = RunTrials(trials, threads, [&](std::uint64_t t) {
    const RngSpec trial_rng = rng.ForTrial(t);
    const LabelVector labels = SampleLabels(params, trial_rng);
    const Graph g = SampleGraph(labels, params.w, trial_rng);
    const Graph recon = ApplyTestChannel(g, labels, alloc, params.w, trial_rng);
    TrialResult r;
    r.distortion = HammingDistortion(g, recon);
    r.tallies.resize(k * k);
    std::uint64_t pair = 0;
    for (std::int64_t i = 0; i < params.n; ++i) {
      for (std::int64_t j = i + 1; j < params.n; ++j, ++pair) {
        const std::size_t l = std::min(labels[i], labels[j]);
        const std::size_t m = std::max(labels[i], labels[j]);
        PairTally& tally = r.tallies[l * k + m];
        ++tally.edges;
        tally.flips += g.Edge(pair) != recon.Edge(pair);
        tally.reproduced += recon.Edge(pair);
      }
    }
    return r;
  });

  SimReport report;
  Summarize(results, report);
  report.target_distortion = distortion;
  report.analytic_rate = SbmConditionalRdf(params, distortion).rate_bits;
  report.dstar = alloc.dstar;
  return report;
}

SimReport MonteCarloDistortion(const InhomErParams& params, double distortion,
                               std::uint64_t trials, const RngSpec& rng,
                               unsigned threads) {
  CheckTrials(trials);
  const ErAllocation alloc = SolveErWaterfill(params, distortion);
  const auto results = RunTrials(trials, threads, [&](std::uint64_t t) {
    const RngSpec trial_rng = rng.ForTrial(t);
    const Graph g = SampleGraph(params, trial_rng);
    const Graph recon = ApplyTestChannel(g, params, alloc, trial_rng);
    return TrialResult{HammingDistortion(g, recon), {}};
  });
  SimReport report;
  Summarize(results, report);
  report.target_distortion = distortion;
  report.analytic_rate = InhomogeneousErRdf(params, distortion).rate_bits;
  return report;
}

}  // namespace sbmrd
