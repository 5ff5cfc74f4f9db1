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
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "wsdms/errors.h"
#include "wsdms/numerics.h"
#include "wsdms/tree_encoder.h"

namespace wsdms {
namespace {

using testing::MakeTree;
using testing::RandomTree;
using testing::RandomUnit;

KernelScorer Scorer(ad::Tape& tape, std::vector<double> weight, double bias = 0.0) {
  return {tape.Constant(Tensor::Vector(std::move(weight))),
          tape.Constant(Tensor::Vector({bias}))};
}

KernelScorer RandomScorer(ad::Tape& tape, Rng& rng, std::size_t k) {
  return Scorer(tape, rng.NormalVector(k), rng.Normal());
}

TEST(TranslationMatrix, IdenticalNeighborsGiveOne) {
  const Tensor e = Tensor::Vector({0.3, 0.4});
  const auto m = BuildTranslationMatrix(MakeTree("t", {e, e}, {-1, 0}));
  EXPECT_NEAR(m(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(m(1, 0), 1.0, 1e-15);
}

TEST(TranslationMatrix, ChainMasksNonNeighbors) {
  // a - b - c with a and c identical: still 0.
  const Tensor a = Tensor::Vector({1.0, 0.0});
  const Tensor b = Tensor::Vector({0.6, 0.8});
  const auto m = BuildTranslationMatrix(MakeTree("t", {a, b, a}, {-1, 0, 1}));
  EXPECT_EQ(m(0, 2), 0.0);
  EXPECT_EQ(m(2, 0), 0.0);
  EXPECT_NEAR(m(0, 1), 0.6, 1e-15);
  EXPECT_NEAR(m(1, 2), 0.6, 1e-15);
}

TEST(TranslationMatrix, SelfLoopsAreOneAndNeighborsSymmetric) {
  Rng rng(3);
  const ConversationTree tree = RandomTree(rng, "t", 7, 5);
  const auto m = BuildTranslationMatrix(tree);
  for (std::size_t p = 0; p < tree.size(); ++p) {
    EXPECT_EQ(m(p, p), 1.0);
    for (std::size_t q = 0; q < tree.size(); ++q) {
      if (p == q) continue;
      if (tree.AreNeighbors(p, q)) {
        EXPECT_EQ(m(p, q), m(q, p));
        EXPECT_NEAR(m(p, q),
                    CosineSimilarity(tree.posts()[p].embedding.values(),
                                     tree.posts()[q].embedding.values()),
                    1e-15);
      } else {
        EXPECT_EQ(m(p, q), 0.0);
      }
    }
  }
}

TEST(TranslationMatrix, ZeroEmbeddingIsLocated) {
  const ConversationTree tree =
      MakeTree("tree7", {Tensor::Vector({1.0, 0.0}), Tensor::Vector({0.0, 0.0})}, {-1, 0});
  try {
    BuildTranslationMatrix(tree);
    FAIL();
  } catch (const DegenerateInputError& e) {
    EXPECT_NE(std::string(e.what()).find("tree7p1"), std::string::npos) << e.what();
  }
}

TEST(PostAttention, EqualEntriesGiveUniformGamma) {
  const Tensor e = Tensor::Vector({0.0, 1.0, 0.0});
  // Star: every entry of M over each neighborhood equals 1.
  const ConversationTree tree = MakeTree("t", {e, e, e, e}, {-1, 0, 0, 0});
  const TreeFeatures f =
      ComputeTreeFeatures(tree, KernelBank::Default(10), KernelReading::kPerNeighbor);
  ad::Tape tape;
  Rng rng(1);
  const auto gamma = PostAttention(tape, f, RandomScorer(tape, rng, 10), PostScorer::kKernel);
  for (const ad::Var& g : gamma) {
    for (double v : g.values()) EXPECT_NEAR(v, 1.0 / static_cast<double>(g.size()), 1e-15);
  }
}

TEST(PostAttention, WideKernelsDegenerateToMeanPooling) {
  const KernelBank bank = KernelBank::Default(10).WithWidth(1e6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ConversationTree tree = RandomTree(rng, "t", 2 + rng.Below(9), 8);
    const TreeFeatures f = ComputeTreeFeatures(tree, bank, KernelReading::kPerNeighbor);
    ad::Tape tape;
    const auto gamma =
        PostAttention(tape, f, RandomScorer(tape, rng, 10), PostScorer::kKernel);
    for (const ad::Var& g : gamma) {
      for (double v : g.values()) {
        EXPECT_LT(std::abs(v - 1.0 / static_cast<double>(g.size())), 1e-3);
      }
    }
  }
}

TEST(PostAttention, ExactMatchNeighborWins) {
  Rng rng(11);
  const Tensor centre = RandomUnit(rng, 6);
  std::vector<Tensor> posts = {centre, centre};
  for (int k = 0; k < 3; ++k) posts.push_back(RandomUnit(rng, 6));
  const ConversationTree tree = MakeTree("t", posts, {-1, 0, 0, 0, 0});
  const TreeFeatures f =
      ComputeTreeFeatures(tree, KernelBank::Default(10), KernelReading::kPerNeighbor);
  std::vector<double> w(10, 0.0);
  w[0] = 2.0;  // exact-match kernel
  ad::Tape tape;
  const auto gamma = PostAttention(tape, f, Scorer(tape, w), PostScorer::kKernel);
  // Root's neighbourhood is {0, 1, 2, 3, 4}; post 1 is the exact match.
  const auto g = gamma[0].values();
  // Direct evaluation of the scores: exp(2) for M = 1, exp(2 * phi0(m)) else.
  const KernelBank bank = KernelBank::Default(10);
  std::vector<double> scores;
  for (std::size_t q = 0; q < 5; ++q) {
    const double m = q <= 1 ? 1.0
                            : CosineSimilarity(centre.values(), posts[q].values());
    scores.push_back(2.0 * GaussianKernelVector(m, bank)[0]);
  }
  const auto oracle = Softmax(scores);
  for (std::size_t q = 0; q < 5; ++q) EXPECT_NEAR(g[q], oracle[q], 1e-14);
  for (std::size_t q = 2; q < 5; ++q) EXPECT_GT(g[1], g[q]);
  // The self loop (M = 1) ties with the exact-match neighbour.
  EXPECT_DOUBLE_EQ(g[0], g[1]);
}

TEST(UpdatePosts, SinglePostIsUnchanged) {
  const Tensor e = Tensor::Vector({0.2, -0.5, 0.1});
  const TreeFeatures f = ComputeTreeFeatures(MakeTree("t", {e}, {-1}),
                                             KernelBank::Default(10),
                                             KernelReading::kPerNeighbor);
  ad::Tape tape;
  Rng rng(0);
  const TreeEncoding enc = EncodeTree(tape, f, RandomScorer(tape, rng, 10), {});
  EXPECT_EQ(enc.gamma[0].values()[0], 1.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(enc.posts[0].values()[i], e[i]);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(enc.pooled.values()[i], e[i]);
}

TEST(UpdatePosts, UniformOverSelfAndNeighborIsMidpoint) {
  const Tensor p = Tensor::Vector({1.0, 0.0});
  const Tensor q = Tensor::Vector({0.0, 1.0});
  const TreeFeatures f = ComputeTreeFeatures(MakeTree("t", {p, q}, {-1, 0}),
                                             KernelBank::Default(10),
                                             KernelReading::kPerNeighbor);
  ad::Tape tape;
  const std::vector<ad::Var> posts = {tape.Constant(p), tape.Constant(q)};
  const std::vector<ad::Var> gamma = {tape.Constant(Tensor::Vector({0.5, 0.5})),
                                      tape.Constant(Tensor::Vector({0.5, 0.5}))};
  const auto out = UpdatePosts(f, posts, gamma);
  EXPECT_DOUBLE_EQ(out[0].values()[0], 0.5);
  EXPECT_DOUBLE_EQ(out[0].values()[1], 0.5);
}

TEST(UpdatePosts, StarMatchesMatrixOracle) {
  Rng rng(21);
  std::vector<Tensor> e;
  for (int k = 0; k < 3; ++k) e.push_back(RandomUnit(rng, 4));
  // Star centred on post 0: hoods are {0,1,2}, {0,1}, {0,2}.
  const TreeFeatures f = ComputeTreeFeatures(MakeTree("t", e, {-1, 0, 0}),
                                             KernelBank::Default(10),
                                             KernelReading::kPerNeighbor);
  const double g0[3] = {0.2, 0.5, 0.3};
  const double g1[2] = {0.9, 0.1};
  const double g2[2] = {0.4, 0.6};
  // Dense row-stochastic matrix A with A[p][q] = gamma_p(q).
  const double a[3][3] = {{0.2, 0.5, 0.3}, {0.9, 0.1, 0.0}, {0.4, 0.0, 0.6}};
  ad::Tape tape;
  std::vector<ad::Var> posts;
  for (const Tensor& t : e) posts.push_back(tape.Constant(t));
  const std::vector<ad::Var> gamma = {
      tape.Constant(Tensor::Vector({g0[0], g0[1], g0[2]})),
      tape.Constant(Tensor::Vector({g1[0], g1[1]})),
      tape.Constant(Tensor::Vector({g2[0], g2[1]}))};
  const auto out = UpdatePosts(f, posts, gamma);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t i = 0; i < 4; ++i) {
      double expected = 0.0;
      for (std::size_t q = 0; q < 3; ++q) expected += a[p][q] * e[q][i];
      EXPECT_NEAR(out[p].values()[i], expected, 1e-15);
    }
  }
}

TEST(PoolTree, SinglePost) {
  ad::Tape tape;
  const std::vector<ad::Var> posts = {tape.Constant(Tensor::Vector({0.3, 0.7}))};
  EXPECT_DOUBLE_EQ(PoolTree(posts).values()[1], 0.7);
}

TEST(PoolTree, TwoPostsAverage) {
  ad::Tape tape;
  const std::vector<ad::Var> posts = {tape.Constant(Tensor::Vector({1.0, 0.0})),
                                      tape.Constant(Tensor::Vector({0.0, 1.0}))};
  const auto pooled = PoolTree(posts).values();
  EXPECT_DOUBLE_EQ(pooled[0], 0.5);
  EXPECT_DOUBLE_EQ(pooled[1], 0.5);
}

TEST(PoolTree, FivePostBruteForceMean) {
  Rng rng(8);
  const ConversationTree tree = RandomTree(rng, "t", 5, 6);
  const TreeFeatures f =
      ComputeTreeFeatures(tree, KernelBank::Default(10), KernelReading::kPerNeighbor);
  ad::Tape tape;
  const TreeEncoding enc = EncodeTree(tape, f, RandomScorer(tape, rng, 10), {});
  for (std::size_t i = 0; i < 6; ++i) {
    double mean = 0.0;
    for (const ad::Var& p : enc.posts) mean += p.values()[i];
    EXPECT_NEAR(enc.pooled.values()[i], mean / 5.0, 1e-15);
  }
}

TEST(PoolTree, EmptyIsAnError) {
  EXPECT_THROW(PoolTree(std::vector<ad::Var>{}), DegenerateInputError);
}

TEST(TreeEncoderProperty, GammaRowsAreDistributions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const ConversationTree tree = RandomTree(rng, "t", 1 + rng.Below(12), 6);
    for (KernelReading reading : {KernelReading::kPerNeighbor, KernelReading::kNodeLogSum}) {
      const TreeFeatures f = ComputeTreeFeatures(tree, KernelBank::Default(10), reading);
      ad::Tape tape;
      const KernelScorer scorer = RandomScorer(tape, rng, 10);
      for (PostScorer kind : {PostScorer::kKernel, PostScorer::kDotProduct}) {
        const auto gamma = PostAttention(tape, f, scorer, kind);
        for (std::size_t p = 0; p < gamma.size(); ++p) {
          ASSERT_EQ(gamma[p].size(), f.neighborhoods[p].size());
          double total = 0.0;
          for (double v : gamma[p].values()) {
            ASSERT_GE(v, 0.0);
            ASSERT_TRUE(std::isfinite(v));
            total += v;
          }
          EXPECT_NEAR(total, 1.0, 1e-12) << "seed " << seed;
        }
      }
    }
  }
}

TEST(TreeEncoderProperty, PoolingIsInvariantToPostOrder) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.Below(8);
    const ConversationTree tree = RandomTree(rng, "t", n, 5);
    // Same tree with posts listed in a shuffled order.
    std::vector<Post> shuffled = tree.posts();
    rng.Shuffle(shuffled);
    const ConversationTree permuted("t", shuffled);
    const std::vector<double> weight = rng.NormalVector(10);
    const double bias = rng.Normal();
    std::vector<double> pooled[2];
    int slot = 0;
    for (const ConversationTree* t : {&tree, &permuted}) {
      const TreeFeatures f =
          ComputeTreeFeatures(*t, KernelBank::Default(10), KernelReading::kPerNeighbor);
      ad::Tape tape;
      TreeEncoderOptions options;
      options.rounds = 2;
      const TreeEncoding enc = EncodeTree(tape, f, Scorer(tape, weight, bias), options);
      pooled[slot++].assign(enc.pooled.values().begin(), enc.pooled.values().end());
    }
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(pooled[0][i], pooled[1][i], 1e-12);
  }
}

TEST(TreeEncoderProperty, WideKernelUpdateEqualsNeighborhoodMean) {
  const KernelBank bank = KernelBank::Default(10).WithWidth(1e6);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const ConversationTree tree = RandomTree(rng, "t", 1 + rng.Below(10), 4);
    const TreeFeatures f = ComputeTreeFeatures(tree, bank, KernelReading::kPerNeighbor);
    ad::Tape tape;
    const TreeEncoding enc = EncodeTree(tape, f, RandomScorer(tape, rng, 10), {});
    for (std::size_t p = 0; p < tree.size(); ++p) {
      for (std::size_t i = 0; i < 4; ++i) {
        double mean = 0.0;
        for (std::size_t q : f.neighborhoods[p]) mean += tree.posts()[q].embedding[i];
        mean /= static_cast<double>(f.neighborhoods[p].size());
        EXPECT_NEAR(enc.posts[p].values()[i], mean, 1e-6);
      }
    }
  }
}

TEST(Neighborhood, IncludesSelfSorted) {
  Rng rng(2);
  const Tensor e = RandomUnit(rng, 3);
  const ConversationTree tree = MakeTree("t", {e, e, e, e}, {-1, 0, 0, 1});
  EXPECT_EQ(Neighborhood(tree, 0), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(Neighborhood(tree, 1), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(Neighborhood(tree, 3), (std::vector<std::size_t>{1, 3}));
}

TEST(EncodeTree, ZeroRoundsIsAnError) {
  Rng rng(2);
  const TreeFeatures f = ComputeTreeFeatures(RandomTree(rng, "t", 3, 3),
                                             KernelBank::Default(4),
                                             KernelReading::kPerNeighbor);
  ad::Tape tape;
  TreeEncoderOptions options;
  options.rounds = 0;
  EXPECT_THROW(EncodeTree(tape, f, RandomScorer(tape, rng, 4), options), ConfigError);
}

}  // namespace
}  // namespace wsdms
