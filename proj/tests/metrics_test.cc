//
// Copyright 2026 The dpfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpfl/metrics.h"

#include <random>

#include "dpfl/score.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace dpfl {
namespace {

using ::dpfl::testing::MakeDataset;
using ::dpfl::testing::Raw;
using ::dpfl::testing::StatusHasKind;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::Pointwise;

constexpr double kTol = 1e-9;

const Dataset& D5() {
  static const Dataset* d = new Dataset(MakeDataset({-1, -0.5, 0, 0.5, 1}));
  return *d;
}

TEST(OptimalLocationTest, MiddleOrderStatistic) {
  EXPECT_EQ(OptimalLocation(MakeDataset({-1, 0, 1})), 0);
  EXPECT_EQ(OptimalLocation(MakeDataset({-1, -1, 1})), -1);
  EXPECT_EQ(OptimalLocation(MakeDataset({0, 0, 0, 0, 1})), 0);
}

TEST(SocialWelfareTest, HandSums) {
  EXPECT_NEAR(*SocialWelfare(D5(), 0), -3, kTol);
  EXPECT_NEAR(*SocialWelfare(MakeDataset({0, 0, 0}), 0), 0, kTol);
  EXPECT_NEAR(*SocialWelfare(D5(), 0.6), -3.8, kTol);
}

TEST(SocialWelfareTest, RejectsOutsideDomain) {
  EXPECT_THAT(SocialWelfare(D5(), 1.5).status(),
              StatusHasKind("LocationOutOfDomain"));
}

TEST(LossVectorTest, HandExamples) {
  EXPECT_THAT(*LossVector(D5(), 0), ElementsAre(0, 0, 0, 0, 0));
  EXPECT_THAT(*LossVector(D5(), 0.6),
              Pointwise(DoubleNear(kTol),
                        std::vector<double>{0.6, 0.6, 0.6, -0.4, -0.6}));
  EXPECT_THAT(*LossVector(MakeDataset({0, 0, 0}), 1),
              Pointwise(DoubleNear(kTol), std::vector<double>{1, 1, 1}));
  EXPECT_THAT(LossVector(D5(), -2).status(),
              StatusHasKind("LocationOutOfDomain"));
}

TEST(FairTest, HandExamples) {
  EXPECT_EQ(*Fair(D5(), 0), 0);
  EXPECT_NEAR(*Fair(D5(), 0.6), 0.6, kTol);
  EXPECT_NEAR(*Fair(D5(), 0.6, Evaluation::kOracle), 0.6, kTol);
  EXPECT_NEAR(*Fair(MakeDataset({-1, -1, 1}), 0), 1, kTol);
  EXPECT_THAT(Fair(D5(), 3).status(), StatusHasKind("LocationOutOfDomain"));
}

TEST(CrossedSetTest, HandExamples) {
  EXPECT_THAT(*CrossedSet(D5(), 0), IsEmpty());
  EXPECT_THAT(*CrossedSet(D5(), 0.6), ElementsAre(4));
  EXPECT_THAT(*CrossedSet(D5(), -0.75), ElementsAre(2));
  EXPECT_THAT(CrossedSet(D5(), 1.1).status(),
              StatusHasKind("LocationOutOfDomain"));
}

TEST(CrossedSetTest, IncludesTies) {
  EXPECT_THAT(*CrossedSet(D5(), 0.5), ElementsAre(4));
  EXPECT_THAT(*CrossedSet(D5(), 1), ElementsAre(4, 5));
}

TEST(SwdiffTest, HandExamples) {
  EXPECT_EQ(*Swdiff(D5(), 0), 0);
  EXPECT_NEAR(*Swdiff(D5(), 0.6), 0.8, kTol);
  EXPECT_NEAR(*Swdiff(D5(), 0.6, Evaluation::kOracle), 0.8, kTol);
  EXPECT_NEAR(*Swdiff(MakeDataset({0, 0, 0}), 1), 3, kTol);
  EXPECT_THAT(Swdiff(D5(), -1.5).status(),
              StatusHasKind("LocationOutOfDomain"));
}

TEST(MetricsPropertyTest, ClosedFormsMatchOracles) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    Dataset d = testing::RandomDataset(rng, testing::RandomOddSize(rng, 3, 21));
    const double l = trial % 4 == 0 ? d[static_cast<int>(unit(rng) * d.size())]
                                    : -1 + 2 * unit(rng);
    ASSERT_NEAR(*Fair(d, l), oracle::MaxLoss(Raw(d), l), kTol);
    ASSERT_NEAR(*Fair(d, l, Evaluation::kOracle), oracle::MaxLoss(Raw(d), l),
                kTol);
    ASSERT_NEAR(*Swdiff(d, l), oracle::WelfareGap(Raw(d), l), kTol);
    ASSERT_NEAR(*Swdiff(d, l, Evaluation::kOracle),
                oracle::WelfareGap(Raw(d), l), kTol);
  }
}

TEST(MetricsPropertyTest, OrderingAndRanges) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    Dataset d = testing::RandomDataset(rng, testing::RandomOddSize(rng, 1, 21));
    const double l = -1 + 2 * unit(rng);
    const double fair = *Fair(d, l);
    const double swdiff = *Swdiff(d, l);
    ASSERT_LE(fair, swdiff + kTol);
    ASSERT_GE(fair, 0);
    ASSERT_LE(fair, d.diameter());
    ASSERT_GE(swdiff, 0);
    ASSERT_LE(swdiff, d.diameter() * d.size());
  }
}

// The pointwise relation uses q; with p_alpha in its place it fails on D5.
TEST(MetricsPropertyTest, SwdiffBoundedByPercentileLoss) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    Dataset d = testing::RandomDataset(rng, testing::RandomOddSize(rng, 1, 21));
    const double l = -1 + 2 * unit(rng);
    if (l == d.median()) continue;
    const int q = *QValue(d, l);
    ASSERT_LE(*Swdiff(d, l), (2 * q - 1) * *Fair(d, l) + kTol) << "l=" << l;
  }
  const int p = *PAlphaValue(D5(), 0.6, *WideningParam::Create(0.1));
  EXPECT_EQ(p, 1);
  EXPECT_GT(*Swdiff(D5(), 0.6), (2 * p - 1) * *Fair(D5(), 0.6));
}

}  // namespace
}  // namespace dpfl
