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

#include "dpfl/core.h"

#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace dpfl {
namespace {

using ::dpfl::testing::MakeDataset;
using ::dpfl::testing::Raw;
using ::dpfl::testing::StatusHasKind;
using ::testing::ElementsAre;

TEST(LoadDatasetTest, SortsLocations) {
  Dataset d = MakeDataset({0.5, -1, 0});
  EXPECT_THAT(Raw(d), ElementsAre(-1, 0, 0.5));
  EXPECT_EQ(d.size(), 3);
  EXPECT_EQ(d.median(), 0);
}

TEST(LoadDatasetTest, KeepsDuplicates) {
  EXPECT_THAT(Raw(MakeDataset({0, 0, 0})), ElementsAre(0, 0, 0));
}

TEST(LoadDatasetTest, RejectsEvenCount) {
  std::vector<double> raw = {-1, 1};
  EXPECT_THAT(LoadDataset(raw, 2).status(), StatusHasKind("EvenN"));
}

TEST(LoadDatasetTest, RejectsOutOfDomain) {
  std::vector<double> raw = {-1, 0, 1.01};
  EXPECT_THAT(LoadDataset(raw, 2).status(), StatusHasKind("OutOfDomain"));
}

TEST(LoadDatasetTest, RejectsNonPositiveDiameter) {
  std::vector<double> raw = {0};
  EXPECT_THAT(LoadDataset(raw, 0).status(),
              StatusHasKind("NonPositiveDiameter"));
  EXPECT_THAT(LoadDataset(raw, -1).status(),
              StatusHasKind("NonPositiveDiameter"));
}

TEST(LoadDatasetTest, RejectsEmpty) {
  std::vector<double> raw;
  EXPECT_THAT(LoadDataset(raw, 2).status(), StatusHasKind("EmptyDataset"));
}

TEST(LoadDatasetTest, ClampsWithinSlack) {
  Dataset d = MakeDataset({-1 - 5e-13, 0, 1 + 5e-13});
  EXPECT_EQ(d[0], -1);
  EXPECT_EQ(d[2], 1);
}

TEST(LoadDatasetTest, ReloadIsIdempotent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Dataset d = testing::RandomDataset(rng, testing::RandomOddSize(rng, 1, 21));
    EXPECT_EQ(MakeDataset(Raw(d), d.diameter()), d);
  }
}

TEST(ChangeOneDistanceTest, HandExamples) {
  Dataset a = MakeDataset({-1, -1, 1});
  Dataset b = MakeDataset({-1, 1, 1});
  EXPECT_EQ(*ChangeOneDistance(a, a), 0);
  EXPECT_EQ(*ChangeOneDistance(a, b), 1);
  EXPECT_EQ(
      *ChangeOneDistance(MakeDataset({-1, 0, 1}), MakeDataset({-1, -1, -1})),
      2);
}

TEST(ChangeOneDistanceTest, RejectsSizeMismatch) {
  EXPECT_THAT(
      ChangeOneDistance(MakeDataset({0}), MakeDataset({0, 0, 0})).status(),
      StatusHasKind("SizeMismatch"));
}

TEST(ChangeOneDistanceTest, RejectsDomainMismatch) {
  EXPECT_THAT(
      ChangeOneDistance(MakeDataset({0}, 2), MakeDataset({0}, 4)).status(),
      StatusHasKind("DomainMismatch"));
}

TEST(ChangeOneDistanceTest, MatchesMultisetOracleAndIsAMetric) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = testing::RandomOddSize(rng, 1, 21);
    Dataset a = testing::RandomDataset(rng, n);
    Dataset b = testing::RandomAtDistance(rng, a, trial % (n + 1));
    Dataset c = testing::RandomNeighbor(rng, b);
    const int ab = *ChangeOneDistance(a, b);
    const int ba = *ChangeOneDistance(b, a);
    const int bc = *ChangeOneDistance(b, c);
    const int ac = *ChangeOneDistance(a, c);
    ASSERT_EQ(ab, oracle::MultisetDifference(Raw(a), Raw(b)));
    ASSERT_EQ(ab, ba);
    ASSERT_EQ(ab == 0, a == b);
    ASSERT_LE(ac, ab + bc);
  }
}

TEST(NeighborPairTest, RecordsDistance) {
  NeighborPair pair =
      *MakeNeighborPair(MakeDataset({-1, -1, 1}), MakeDataset({-1, 1, 1}));
  EXPECT_EQ(pair.distance, 1);
}

}  // namespace
}  // namespace dpfl
