// Copyright 2026 The WSDMS Authors. All Rights Reserved.
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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "wsdms/errors.h"
#include "wsdms/linker.h"

namespace wsdms {
namespace {

using testing::RandomUnit;

TEST(SimilarityTable, SameVectorIsOne) {
  const std::vector<Tensor> s = {Tensor::Vector({0.6, 0.8})};
  const auto table = SimilarityTable(s, s);
  EXPECT_NEAR(table.at(0, 0), 1.0, 1e-15);
}

TEST(SimilarityTable, OrthogonalIsZero) {
  const std::vector<Tensor> s = {Tensor::Vector({1.0, 0.0})};
  const std::vector<Tensor> t = {Tensor::Vector({0.0, 2.0})};
  EXPECT_EQ(SimilarityTable(s, t).at(0, 0), 0.0);
}

TEST(SimilarityTable, MatchesLoopOracle) {
  Rng rng(4);
  std::vector<Tensor> s, t;
  for (int i = 0; i < 3; ++i) s.push_back(Tensor::Vector(rng.NormalVector(5)));
  for (int j = 0; j < 2; ++j) t.push_back(Tensor::Vector(rng.NormalVector(5)));
  const auto table = SimilarityTable(s, t);
  ASSERT_EQ(table.shape(), (std::vector<std::size_t>{3, 2}));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      double dot = 0, ns = 0, nt = 0;
      for (std::size_t k = 0; k < 5; ++k) {
        dot += s[i][k] * t[j][k];
        ns += s[i][k] * s[i][k];
        nt += t[j][k] * t[j][k];
      }
      EXPECT_NEAR(table.at(i, j), dot / std::sqrt(ns * nt), 1e-14);
    }
  }
}

TEST(SimilarityTable, ZeroVectorIsAnError) {
  const std::vector<Tensor> s = {Tensor::Vector({0.0, 0.0})};
  const std::vector<Tensor> t = {Tensor::Vector({1.0, 0.0})};
  EXPECT_THROW(SimilarityTable(s, t), DegenerateInputError);
}

TEST(ComputeTau, RangeMidpoint) {
  EXPECT_DOUBLE_EQ(ComputeTau(std::vector<double>{0.1, 0.2, 0.9}, TauMode::kRangeMidpoint),
                   0.5);
}

TEST(ComputeTau, ConstantPopulation) {
  EXPECT_DOUBLE_EQ(ComputeTau(std::vector<double>(7, 0.37), TauMode::kRangeMidpoint), 0.37);
}

TEST(ComputeTau, UniformSampleCentresNearZero) {
  Rng rng(99);
  std::vector<double> scores;
  for (int i = 0; i < 10000; ++i) scores.push_back(rng.Uniform(-1.0, 1.0));
  EXPECT_NEAR(ComputeTau(scores, TauMode::kRangeMidpoint), 0.0, 0.05);
}

TEST(ComputeTau, MedianAndOffModes) {
  EXPECT_DOUBLE_EQ(ComputeTau(std::vector<double>{0.1, 0.2, 0.9}, TauMode::kMedian), 0.2);
  EXPECT_DOUBLE_EQ(ComputeTau(std::vector<double>{0.1, 0.2, 0.4, 0.9}, TauMode::kMedian),
                   0.3);
  EXPECT_TRUE(std::isinf(ComputeTau(std::vector<double>{0.5}, TauMode::kOff)));
}

TEST(ComputeTau, EmptyPopulationIsAnError) {
  EXPECT_THROW(ComputeTau(std::vector<double>{}, TauMode::kRangeMidpoint),
               DegenerateInputError);
}

TEST(ComputeTau, DependsOnlyOnTheMultiset) {
  Rng rng(5);
  std::vector<double> scores = rng.NormalVector(101);
  const double a = ComputeTau(scores, TauMode::kRangeMidpoint);
  const double m = ComputeTau(scores, TauMode::kMedian);
  rng.Shuffle(scores);
  EXPECT_EQ(ComputeTau(scores, TauMode::kRangeMidpoint), a);
  EXPECT_EQ(ComputeTau(scores, TauMode::kMedian), m);
}

Tensor RandomTable(Rng& rng, std::size_t n, std::size_t m) {
  Tensor t({n, m});
  for (double& v : t.values()) v = rng.Uniform(-1.0, 1.0);
  return t;
}

TEST(BuildLinks, TauBelowEveryScoreEqualsFull) {
  Rng rng(1);
  const Tensor table = RandomTable(rng, 4, 3);
  const LinkGraph low = BuildLinks(table, -1.0 - 1e-9, LinkMode::kThreshold);
  const LinkGraph full = BuildLinks(table, 0.0, LinkMode::kFull);
  EXPECT_EQ(low.edges, full.edges);
  EXPECT_EQ(full.edges.size(), 12u);
}

TEST(BuildLinks, TauOneGivesNoEdges) {
  Tensor table({2, 2});
  std::fill(table.values().begin(), table.values().end(), 1.0);
  const LinkGraph g = BuildLinks(table, 1.0, LinkMode::kThreshold);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(g.Unlinked(), (std::vector<std::size_t>{0, 1}));
}

TEST(BuildLinks, OnlyTheHighEdgeSurvives) {
  const Tensor table = Tensor::Matrix(1, 2, {0.9, 0.4});
  const LinkGraph g = BuildLinks(table, 0.5, LinkMode::kThreshold);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_EQ(g.linked[0], (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(g.tau, 0.5);
}

TEST(BuildLinks, TiesAreExcluded) {
  const Tensor table = Tensor::Matrix(1, 2, {0.5, 0.6});
  EXPECT_EQ(BuildLinks(table, 0.5, LinkMode::kThreshold).edges.size(), 1u);
}

TEST(LinkerProperty, ThresholdEdgesAreSubsetOfFull) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Tensor table = RandomTable(rng, 1 + rng.Below(6), 1 + rng.Below(6));
    const LinkGraph t = BuildLinks(table, rng.Uniform(-1.0, 1.0), LinkMode::kThreshold);
    const LinkGraph f = BuildLinks(table, 0.0, LinkMode::kFull);
    const std::set<std::pair<std::size_t, std::size_t>> full(f.edges.begin(), f.edges.end());
    EXPECT_EQ(f.edges.size(), table.size());
    for (const auto& e : t.edges) EXPECT_TRUE(full.count(e));
  }
}

TEST(LinkerProperty, TreePermutationRelabelsEdges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.Below(5);
    const std::size_t m = 1 + rng.Below(5);
    const Tensor table = RandomTable(rng, n, m);
    std::vector<std::size_t> perm(m);
    for (std::size_t j = 0; j < m; ++j) perm[j] = j;
    rng.Shuffle(perm);
    // Column j of the permuted table is column perm[j] of the original.
    Tensor permuted({n, m});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) permuted.at(i, j) = table.at(i, perm[j]);
    }
    const double tau = rng.Uniform(-0.5, 0.5);
    const LinkGraph a = BuildLinks(table, tau, LinkMode::kThreshold);
    const LinkGraph b = BuildLinks(permuted, tau, LinkMode::kThreshold);
    std::set<std::pair<std::size_t, std::size_t>> relabelled;
    for (const auto& [i, j] : b.edges) relabelled.emplace(i, perm[j]);
    EXPECT_EQ(relabelled,
              (std::set<std::pair<std::size_t, std::size_t>>(a.edges.begin(), a.edges.end())));
  }
}

TEST(WriteLinkGraph, TabSeparatedDump) {
  const LinkGraph g = BuildLinks(Tensor::Matrix(2, 2, {0.9, 0.1, 0.7, 0.8}), 0.5,
                                 LinkMode::kThreshold);
  std::ostringstream out;
  WriteLinkGraph(out, "a3", g);
  EXPECT_EQ(out.str(), "# a3\n0\t0\t0.900000\n1\t0\t0.700000\n1\t1\t0.800000\n");
}

}  // namespace
}  // namespace wsdms
