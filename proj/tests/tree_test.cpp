/*
 * Copyright 2026 The impshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "impshap/data.hpp"
#include "impshap/tree.hpp"

namespace impshap {
namespace {

Dataset Csv(const std::string& text) {
  std::istringstream in(text);
  return ReadDatasetCsv(in);
}

double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

TEST(UniformIndexTest, StaysInRangeAndCoversValues) {
  std::mt19937_64 rng(1);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto r = UniformIndex(rng, 7);
    ASSERT_LT(r, 7u);
    ++seen[r];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(BuildTreeTest, GreedyTreeOnTableOneSplitsOnBestFeatureFirst) {
  const auto y1 = BuildTree(DatasetFromJoint(Table1Y1()), 2, ImpurityKind::kEntropy, 0);
  EXPECT_EQ(y1.root().split.feature, 0);
  const auto y2 = BuildTree(DatasetFromJoint(Table1Y2()), 2, ImpurityKind::kEntropy, 0);
  EXPECT_EQ(y2.root().split.feature, 1);
  const auto mdi1 = TreeMdi(y1);
  EXPECT_NEAR(mdi1[0], 0.091, 5e-4);
  EXPECT_NEAR(mdi1[1], 0.180, 5e-4);
  const auto mdi2 = TreeMdi(y2);
  EXPECT_NEAR(mdi2[0], 0.243, 5e-4);
  EXPECT_NEAR(mdi2[1], 0.016, 5e-4);
}

TEST(BuildTreeTest, WeightedAndReplicatedRowsGiveTheSameTree) {
  const auto j = Table1Y1();
  const Dataset weighted = DatasetFromJoint(j);
  const Dataset replicated = ReplicatedDatasetFromJoint(j, 40);
  EXPECT_EQ(replicated.num_rows(), 40u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = BuildTree(weighted, 1, ImpurityKind::kEntropy, seed);
    const auto b = BuildTree(replicated, 1, ImpurityKind::kEntropy, seed);
    const auto ma = TreeMdi(a), mb = TreeMdi(b);
    EXPECT_NEAR(ma[0], mb[0], 1e-12);
    EXPECT_NEAR(ma[1], mb[1], 1e-12);
    EXPECT_EQ(a.nodes().size(), b.nodes().size());
  }
}

TEST(BuildTreeTest, EfficiencyWithinATree) {
  const Dataset led = LedSampled(300, 3);
  for (ImpurityKind kind : {ImpurityKind::kEntropy, ImpurityKind::kGini}) {
    for (int k : {1, 3, 7}) {
      const auto t = BuildTree(led, k, kind, 11);
      EXPECT_NEAR(Sum(TreeMdi(t)), t.root().impurity - t.LeafImpurity(), 1e-12);
    }
  }
}

TEST(BuildTreeTest, CategoricalFeatureIsNotReusedOnAPath) {
  const auto t = BuildTree(LedSampled(500, 1), 1, ImpurityKind::kEntropy, 5);
  // Walk every root-to-leaf path.
  std::vector<std::pair<int, std::vector<int>>> stack = {{0, {}}};
  while (!stack.empty()) {
    auto [id, used] = stack.back();
    stack.pop_back();
    const auto& n = t.node(id);
    if (n.is_leaf) continue;
    for (int f : used) EXPECT_NE(f, n.split.feature);
    used.push_back(n.split.feature);
    for (int c : n.children) stack.push_back({c, used});
  }
  EXPECT_LE(t.Depth(), 7);
}

TEST(BuildTreeTest, LeavesArePureOrExhausted) {
  const auto t = BuildTree(LedPopulation(), 1, ImpurityKind::kEntropy, 2);
  for (const auto& n : t.nodes()) {
    if (n.is_leaf && n.mass > 0.0) {
      EXPECT_LT(n.impurity, 1e-12);
    }
  }
  EXPECT_NEAR(t.LeafImpurity(), 0.0, 1e-12);
}

TEST(BuildTreeTest, ZeroMassChildCarriesParentDistribution) {
  // Category 2 of feature a never occurs.
  const Dataset d = Dataset::FromCategoricalRows({"a", "y"}, {{0, 0}, {0, 0}, {1, 1}, {1, 0}},
                                                 {3, 2});
  const auto t = BuildTree(d, 1, ImpurityKind::kEntropy, 0);
  ASSERT_FALSE(t.root().is_leaf);
  ASSERT_EQ(t.root().children.size(), 3u);
  const auto& empty = t.node(t.root().children[2]);
  EXPECT_TRUE(empty.is_leaf);
  EXPECT_EQ(empty.mass, 0.0);
  EXPECT_EQ(empty.impurity, 0.0);
  EXPECT_EQ(empty.distribution, t.root().distribution);
  const std::vector<double> x = {2.0};
  const auto path = t.Predict(x);
  EXPECT_EQ(path.distribution, t.root().distribution);
}

TEST(BuildTreeTest, NumericSplitUsesMidpointThreshold) {
  const Dataset d = Csv("#kind:num,cat\nx,y\n1,0\n2,0\n3,1\n4,1\n");
  const auto t = BuildTree(d, 1, ImpurityKind::kGini, 0);
  ASSERT_FALSE(t.root().is_leaf);
  EXPECT_EQ(t.root().split.kind, SplitKind::kThreshold);
  EXPECT_DOUBLE_EQ(t.root().split.threshold, 2.5);
  const std::vector<double> lo = {2.5}, hi = {2.6};
  EXPECT_EQ(t.Predict(lo).distribution[0], 1.0);
  EXPECT_EQ(t.Predict(hi).distribution[1], 1.0);
}

TEST(BuildTreeTest, NumericFeatureCanBeReused) {
  const Dataset d = Csv("#kind:num,cat\nx,y\n1,0\n2,1\n3,0\n4,1\n");
  const auto t = BuildTree(d, 1, ImpurityKind::kEntropy, 0);
  EXPECT_NEAR(t.LeafImpurity(), 0.0, 1e-12);
  EXPECT_GE(t.Depth(), 2);
}

TEST(BuildTreeTest, TiesGoToTheLowestFeatureIndex) {
  // Two identical columns.
  const Dataset d = Dataset::FromCategoricalRows(
      {"a", "b", "y"}, {{0, 0, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = BuildTree(d, 2, ImpurityKind::kEntropy, seed);
    EXPECT_EQ(t.root().split.feature, 0);
  }
}

TEST(BuildTreeTest, SameSeedSameTree) {
  const Dataset led = LedSampled(200, 9);
  const auto a = BuildTree(led, 2, ImpurityKind::kEntropy, 42);
  const auto b = BuildTree(led, 2, ImpurityKind::kEntropy, 42);
  EXPECT_EQ(a.StructureFingerprint(), b.StructureFingerprint());
}

TEST(BuildTreeTest, ErrorConditions) {
  const Dataset empty = Dataset::FromCategoricalRows({"a", "y"}, {}, {2, 2});
  try {
    BuildTree(empty, 1, ImpurityKind::kEntropy, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
  const Dataset constant = Dataset::FromCategoricalRows({"a", "y"}, {{0, 0}, {0, 1}});
  try {
    BuildTree(constant, 1, ImpurityKind::kEntropy, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoAdmissibleFeature);
  }
  const Dataset ok = Dataset::FromCategoricalRows({"a", "y"}, {{0, 0}, {1, 1}});
  EXPECT_THROW(BuildTree(ok, 0, ImpurityKind::kEntropy, 0), Error);
  // A pure root is a single leaf even without admissible features.
  const Dataset pure = Dataset::FromCategoricalRows({"a", "y"}, {{0, 1}, {0, 1}});
  EXPECT_EQ(BuildTree(pure, 1, ImpurityKind::kEntropy, 0).nodes().size(), 1u);
}

TEST(PredictTest, MissingAndOutOfRangeValues) {
  const auto t = BuildTree(DatasetFromJoint(Table1Y1()), 1, ImpurityKind::kEntropy, 0);
  const std::vector<double> nan = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  try {
    t.Predict(nan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingFeatureValue);
  }
  const std::vector<double> short_x = {0.0};
  try {
    t.Predict(short_x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingFeatureValue);
  }
  const std::vector<double> bad = {5.0, 0.0};
  EXPECT_THROW(t.Predict(bad), Error);
}

TEST(LocalScoresTest, SaabasSumsToLeafMinusRoot) {
  const auto t = BuildTree(DatasetFromJoint(Table1Y1()), 1, ImpurityKind::kEntropy, 3);
  const std::vector<double> x = {1.0, 0.0};
  std::vector<double> saabas(2, 0.0);
  AccumulateSaabas(t, x, 1, saabas);
  EXPECT_NEAR(Sum(saabas), 0.9 - 0.475, 1e-12);
  EXPECT_NEAR(Sum(saabas), 0.425, 1e-12);
}

TEST(LocalScoresTest, LocalMdiSumsToRootMinusLeafImpurity) {
  const auto t = BuildTree(LedSampled(400, 4), 1, ImpurityKind::kEntropy, 8);
  const Dataset d = LedSampled(20, 5);
  for (std::size_t r = 0; r < d.num_rows(); ++r) {
    const auto x = d.Features(r);
    std::vector<double> local(7, 0.0);
    AccumulateLocalMdi(t, x, local);
    const int last = t.Predict(x).nodes.back();
    EXPECT_NEAR(Sum(local), t.root().impurity - t.node(last).impurity, 1e-12);
  }
}

TEST(LocalScoresTest, TreeMdiIsTrainingMeanOfLocalMdi) {
  const Dataset d = LedSampled(300, 6);
  for (int k : {1, 4, 7}) {
    const auto t = BuildTree(d, k, ImpurityKind::kGini, 13);
    std::vector<double> mean(7, 0.0);
    for (std::size_t r = 0; r < d.num_rows(); ++r) AccumulateLocalMdi(t, d.Features(r), mean);
    const auto mdi = TreeMdi(t);
    for (int m = 0; m < 7; ++m) EXPECT_NEAR(mean[m] / 300.0, mdi[m], 1e-12);
  }
}

}  // namespace
}  // namespace impshap
