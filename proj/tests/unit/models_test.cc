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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

namespace ref = testing::ref;

TEST(PairIndexTest, EnumeratesUpperTriangleInOrder) {
  for (std::int64_t n : {2, 3, 7, 40}) {
    std::uint64_t expected = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = i + 1; j < n; ++j, ++expected) {
        ASSERT_EQ(PairIndex(i, j, n), expected);
        const auto [a, b] = PairFromIndex(expected, n);
        ASSERT_EQ(a, static_cast<std::uint64_t>(i));
        ASSERT_EQ(b, static_cast<std::uint64_t>(j));
      }
    }
    EXPECT_EQ(expected, static_cast<std::uint64_t>(PairCount(n)));
  }
}

TEST(ValidateTest, RejectsBadParameters) {
  SbmParams s = testing::Block3();
  s.n = 1;
  EXPECT_THROW(ValidateSbm(s), InvalidParams);
  s = testing::Block3();
  s.w.Set(0, 1, 1.5);
  EXPECT_THROW(ValidateSbm(s), InvalidParams);
  s = testing::Block3();
  s.w = SymMatrix(2);
  EXPECT_THROW(ValidateSbm(s), InvalidParams);
  EXPECT_THROW(ValidateEr({5, -0.1}), InvalidParams);
  EXPECT_THROW(ValidateInhomEr({3, {0.1, 0.2}}), InvalidParams);
}

TEST(ValidateTest, ClampsWithinSlack) {
  const ErParams er = ValidateEr({4, 1.0 + 1e-13});
  EXPECT_EQ(er.p, 1.0);
}

TEST(EntropyTest, Block3ConditionalEntropy) {
  const SbmParams s = testing::Block3();
  EXPECT_LE(testing::RelErr(SbmConditionalEntropy(s), ref::kBlock3CondEntropy),
            1e-13);
  const EntropyInterval e = SbmEntropyInterval(s);
  EXPECT_DOUBLE_EQ(e.lower, SbmConditionalEntropy(s));
  EXPECT_NEAR(e.upper - e.lower, 100 * ref::kBlock3LabelEntropy, 1e-9);
}

TEST(EntropyTest, InhomogeneousAndErdosRenyi) {
  EXPECT_NEAR(InhomogeneousErEntropy({3, {0.1, 0.2, 0.5}}),
              ref::kInhomEntropy, 1e-14);
  EXPECT_NEAR(ErEntropy({100, 0.5}), 4950.0, 1e-9);
  EXPECT_EQ(ErEntropy({100, 0.0}), 0.0);
  EXPECT_EQ(ErEntropy({100, 1.0}), 0.0);
}

TEST(EntropyTest, ErReductionsAgree) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const ErParams er{2 + i, u(rng)};
    const double direct = ErEntropy(er);
    EXPECT_LE(testing::RelErr(InhomogeneousErEntropy(ToInhomogeneous(er)),
                              direct), 1e-12);
    EXPECT_LE(testing::RelErr(SbmConditionalEntropy(ToSbm(er)), direct),
              1e-12);
  }
}

TEST(LabelVectorTest, OneBasedConversion) {
  const LabelVector v = LabelVector::FromOneBased({1, 3, 2}, 3);
  EXPECT_EQ(v[0], 0u);
  EXPECT_EQ(v[1], 2u);
  EXPECT_THROW(LabelVector::FromOneBased({0, 1}, 2), InvalidParams);
  EXPECT_THROW(LabelVector::FromOneBased({1, 3}, 2), InvalidParams);
}

TEST(GraphTest, BitPackingRoundTrip) {
  Graph g(70);
  EXPECT_EQ(g.pair_count(), 70u * 69u / 2u);
  g.SetEdge(0, 69, true);
  g.SetEdge(68, 69, true);
  g.SetEdge(5, 6, true);
  g.SetEdge(5, 6, false);
  EXPECT_TRUE(g.HasEdge(0, 69));
  EXPECT_TRUE(g.HasEdge(69, 68));
  EXPECT_FALSE(g.HasEdge(5, 6));
  EXPECT_EQ(g.EdgeCount(), 2u);
  EXPECT_TRUE(g.Edge(g.pair_count() - 1));
  EXPECT_THROW(g.SetEdge(3, 3, true), InvalidParams);
}

TEST(GraphTest, EmptyGraphs) {
  EXPECT_EQ(Graph(0).pair_count(), 0u);
  EXPECT_EQ(Graph(1).EdgeCount(), 0u);
}

}  // namespace
}  // namespace sbmrd
