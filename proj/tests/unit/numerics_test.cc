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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

using testing::RandomPrior;
using testing::RandomW;
namespace ref = testing::ref;

TEST(BinaryEntropyTest, KnownValues) {
  EXPECT_NEAR(BinaryEntropy(0.2), ref::kH2Of02, 1e-15);
  EXPECT_NEAR(BinaryEntropy(0.1), ref::kH2Of01, 1e-15);
  EXPECT_NEAR(BinaryEntropy(0.075), ref::kH2Of0075, 1e-15);
  EXPECT_DOUBLE_EQ(BinaryEntropy(0.5), 1.0);
}

TEST(BinaryEntropyTest, EndpointsAreZeroNotNan) {
  EXPECT_EQ(BinaryEntropy(0.0), 0.0);
  EXPECT_EQ(BinaryEntropy(1.0), 0.0);
  EXPECT_FALSE(std::isnan(BinaryEntropy(1e-300)));
  EXPECT_FALSE(std::isnan(BinaryEntropy(std::nextafter(1.0, 0.0))));
}

TEST(BinaryEntropyTest, ClampsTinyExcursions) {
  EXPECT_EQ(BinaryEntropy(-1e-13), 0.0);
  EXPECT_EQ(BinaryEntropy(1.0 + 1e-13), 0.0);
}

TEST(BinaryEntropyTest, RejectsOutOfRange) {
  EXPECT_THROW(BinaryEntropy(-1e-6), DomainError);
  EXPECT_THROW(BinaryEntropy(1.5), DomainError);
  EXPECT_THROW(BinaryEntropy(std::numeric_limits<double>::quiet_NaN()),
               DomainError);
}

TEST(BinaryEntropyTest, SymmetricAndConcave) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng), t = u(rng);
    EXPECT_NEAR(BinaryEntropy(a), BinaryEntropy(1.0 - a), 1e-15);
    EXPECT_GE(BinaryEntropy(t * a + (1 - t) * b) + 1e-14,
              t * BinaryEntropy(a) + (1 - t) * BinaryEntropy(b));
  }
}

TEST(CompensatedSumTest, RecoversLostLowBits) {
  CompensatedSum s;
  s += 1e16;
  for (int i = 0; i < 10; ++i) s += 1.0;
  s += -1e16;
  EXPECT_EQ(s.value(), 10.0);
}

TEST(ProbVectorTest, ValidatesEntriesAndSum) {
  EXPECT_NO_THROW(ProbVector({0.4, 0.3, 0.3}));
  EXPECT_THROW(ProbVector(std::vector<double>{}), InvalidParams);
  EXPECT_THROW(ProbVector({0.5, 0.6}), InvalidParams);
  EXPECT_THROW(ProbVector({1.2, -0.2}), InvalidParams);
  try {
    ProbVector({0.5, 0.6});
    FAIL();
  } catch (const InvalidParams& e) {
    EXPECT_NE(std::string(e.what()).find("sums to 1.1"), std::string::npos)
        << e.what();
  }
}

TEST(ProbVectorTest, ZeroMassCommunityAllowed) {
  const ProbVector p({0.0, 1.0});
  EXPECT_EQ(ShannonEntropy(p), 0.0);
}

TEST(SymMatrixTest, RejectsNonSquareAndAsymmetric) {
  EXPECT_THROW(SymMatrix(std::vector<std::vector<double>>{{0.1, 0.2}}),
               DimensionError);
  EXPECT_THROW(SymMatrix(std::vector<std::vector<double>>{{0.1, 0.2},
                                                          {0.3, 0.1}}),
               InvalidParams);
}

TEST(SymMatrixTest, SetWritesBothHalves) {
  SymMatrix m(3);
  m.Set(0, 2, 0.25);
  EXPECT_EQ(m(2, 0), 0.25);
  EXPECT_EQ(m.Rows()[0][2], 0.25);
}

TEST(EntropyTest, Block3QuadraticForm) {
  const auto s = testing::Block3();
  EXPECT_NEAR(QuadraticForm(s.p, EntropyMatrix(s.w)), ref::kBlock3QuadForm,
              1e-14);
  EXPECT_NEAR(ShannonEntropy(s.p), ref::kBlock3LabelEntropy, 1e-14);
  EXPECT_NEAR(QuadraticForm(s.p, s.w), ref::kBlock3SumPpw, 1e-15);
}

TEST(EntropyTest, QuadraticFormDimensionMismatch) {
  EXPECT_THROW(QuadraticForm(ProbVector({0.5, 0.5}), SymMatrix(3)),
               DimensionError);
}

TEST(PiecewiseSolverTest, SimpleLevels) {
  const std::vector<ClippedTerm> terms = {{0.05, 1}, {0.3, 1}, {0.5, 1}};
  EXPECT_NEAR(SolveMonotonePiecewise(terms, 0.2), 0.075, 1e-15);
  EXPECT_NEAR(SolveMonotonePiecewise(terms, 0.0), 0.0, 0.0);
  // Exactly at a breakpoint.
  EXPECT_NEAR(SolveMonotonePiecewise(terms, 0.65), 0.3, 1e-15);
}

TEST(PiecewiseSolverTest, ZeroCapsAndWeightsIgnored) {
  const std::vector<ClippedTerm> terms = {{0.0, 5}, {0.2, 0}, {0.4, 2}};
  EXPECT_NEAR(SolveMonotonePiecewise(terms, 0.4), 0.2, 1e-15);
  const std::vector<ClippedTerm> none = {{0.0, 1}};
  EXPECT_EQ(SolveMonotonePiecewise(none, 0.0), 0.0);
}

TEST(PiecewiseSolverTest, AgreesWithBisection) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::uniform_real_distribution<double> wt(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ClippedTerm> terms(1 + trial % 12);
    double total = 0.0;
    for (auto& t : terms) {
      t = {u(rng), wt(rng)};
      total += t.cap * t.weight;
    }
    const double target = wt(rng) * total;
    const double exact = SolveMonotonePiecewise(terms, target);
    const double bisect = SolveMonotonePiecewiseBisect(terms, target);
    EXPECT_NEAR(ClippedSum(terms, exact), target, 1e-14 * (1 + total));
    EXPECT_NEAR(ClippedSum(terms, bisect), target, 1e-11);
  }
}

TEST(ProbVectorTest, RandomPriorsAreValid) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const ProbVector p = RandomPrior(rng, 1 + i % 6);
    EXPECT_LE(ShannonEntropy(p), std::log2(static_cast<double>(p.size())) +
                                     1e-12);
    const SymMatrix w = RandomW(rng, p.size());
    EXPECT_LE(QuadraticForm(p, EntropyMatrix(w)), 1.0 + 1e-12);
  }
}

}  // namespace
}  // namespace sbmrd
