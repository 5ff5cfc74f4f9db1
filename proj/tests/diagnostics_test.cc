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


#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "wsdms/diagnostics.h"
#include "wsdms/errors.h"
#include "wsdms/synthetic.h"

namespace wsdms {
namespace {

TEST(AttentionEntropy, Examples) {
  EXPECT_EQ(AttentionEntropy(std::vector<double>{1.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(AttentionEntropy(std::vector<double>(4, 0.25)), std::log(4.0), 1e-15);
  EXPECT_NEAR(AttentionEntropy(std::vector<double>{0.75, 0.25}),
              -(0.75 * std::log(0.75) + 0.25 * std::log(0.25)), 1e-15);
  EXPECT_NEAR(AttentionEntropy(std::vector<double>{0.75, 0.25}), 0.5623, 1e-4);
}

TEST(AttentionEntropy, RejectsNonDistributions) {
  EXPECT_THROW(AttentionEntropy(std::vector<double>{}), DegenerateInputError);
  EXPECT_THROW(AttentionEntropy(std::vector<double>{0.5, 0.6}), DegenerateInputError);
  EXPECT_THROW(AttentionEntropy(std::vector<double>{1.5, -0.5}), DegenerateInputError);
}

ParamStore ScorerParams(std::vector<double> weight) {
  ParamStore p;
  p.Add("kernel.weight", Tensor::Vector(std::move(weight)));
  p.Add("kernel.bias", Tensor::Zeros(1));
  return p;
}

Tensor Unit(std::vector<double> v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  for (double& x : v) x /= std::sqrt(n);
  return Tensor::Vector(std::move(v));
}

TEST(EntropyReport, IdenticalPostsAreUniform) {
  const Tensor e = Unit({1.0, 2.0, 0.5, -1.0});
  const ConversationTree star =
      testing::MakeTree("s", {e, e, e, e, e}, {-1, 0, 0, 0, 0});
  const std::vector<ConversationTree> trees = {star};
  const KernelBank bank = KernelBank::Default(4);
  const EntropyReport r =
      ComputeEntropyReport(trees, bank, ScorerParams({1.3, -0.2, 0.4, 0.7}),
                           KernelReading::kPerNeighbor);
  const double expected = (std::log(5.0) + 4.0 * std::log(2.0)) / 5.0;
  EXPECT_NEAR(r.kernel_mean, expected, 1e-12);
  EXPECT_NEAR(r.dot_product_mean, expected, 1e-12);
  EXPECT_EQ(r.distributions, 5u);
  ASSERT_EQ(r.per_tree.size(), 1u);
  EXPECT_EQ(r.per_tree[0].tree_id, "s");
}

// Centre post, one verbatim reshare of it and three loosely related replies.
std::vector<ConversationTree> ExactMatchFixture() {
  const Tensor c = Unit({1, 0, 0, 0, 0});
  const std::vector<Tensor> posts = {c, c, Unit({0.2, 1, 0, 0, 0}), Unit({0.2, 0, 1, 0, 0}),
                                     Unit({0.2, 0, 0, 1, 0})};
  return {testing::MakeTree("fixture", posts, {-1, 0, 0, 0, 0})};
}

TEST(EntropyReport, ExactMatchKernelIsMoreFocused) {
  const KernelBank bank = KernelBank::Default(10);
  std::vector<double> w(10, 0.0);
  w[0] = 4.0;
  const EntropyReport r = ComputeEntropyReport(ExactMatchFixture(), bank, ScorerParams(w),
                                               KernelReading::kPerNeighbor);
  EXPECT_LT(r.kernel_mean, r.dot_product_mean);
}

TEST(EntropyProperty, NeverExceedsLogSupport) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::vector<ConversationTree> trees = {
        testing::RandomTree(rng, "t", 2 + rng.Below(8), 6)};
    const KernelBank bank = KernelBank::Default(5);
    const ParamStore params = ScorerParams(rng.NormalVector(5, 2.0));
    for (KernelReading reading : {KernelReading::kPerNeighbor, KernelReading::kNodeLogSum}) {
      const TreeFeatures f = ComputeTreeFeatures(trees[0], bank, reading);
      ad::Tape tape;
      const KernelScorer scorer{tape.Constant(params.Get("kernel.weight")),
                                tape.Constant(params.Get("kernel.bias"))};
      for (PostScorer kind : {PostScorer::kKernel, PostScorer::kDotProduct}) {
        const auto gamma = PostAttention(tape, f, scorer, kind);
        for (std::size_t p = 0; p < gamma.size(); ++p) {
          const double h = AttentionEntropy(gamma[p].values());
          EXPECT_GE(h, 0.0);
          EXPECT_LE(h, std::log(static_cast<double>(f.neighborhoods[p].size())) + 1e-12);
        }
      }
    }
  }
}

TEST(EntropyCsv, Layout) {
  EntropyReport r;
  r.per_tree.push_back({"t1", 0.5, 1.25});
  r.kernel_mean = 0.5;
  r.dot_product_mean = 1.25;
  std::ostringstream out;
  WriteEntropyCsv(out, r);
  EXPECT_EQ(out.str(),
            "tree_id,kernel_entropy,dot_product_entropy\n"
            "t1,0.500000,1.250000\n"
            "mean,0.500000,1.250000\n");
}

Corpus Tiny(std::uint64_t seed, std::size_t n) {
  SyntheticConfig sc;
  sc.num_articles = n;
  sc.dim = 8;
  sc.seed = seed;
  return GenerateSynthetic(sc);
}

TrainConfig TinyConfig() {
  TrainConfig c = TrainConfig::DeskScale();
  c.dim = 8;
  c.num_kernels = 4;
  c.max_epochs = 5;
  return c;
}

TEST(RunAblations, EmptyListGivesBaseOnly) {
  const auto rows = RunAblations(Tiny(1, 6), Tiny(2, 4), TinyConfig(), {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].name, "base");
}

TEST(RunAblations, DeterministicRows) {
  const std::vector<std::string> names = {"no_trees", "no_kernel"};
  const auto a = RunAblations(Tiny(1, 6), Tiny(2, 4), TinyConfig(), names);
  const auto b = RunAblations(Tiny(1, 6), Tiny(2, 4), TinyConfig(), names);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].report.article.f1, b[i].report.article.f1);
    EXPECT_EQ(a[i].report.sentence.f1, b[i].report.sentence.f1);
  }
  EXPECT_EQ(a[1].name, "no_trees");
  EXPECT_THROW(RunAblations(Tiny(1, 4), Tiny(2, 4), TinyConfig(),
                            std::vector<std::string>{"bogus"}),
               ConfigError);
}

TEST(AblationOutput, CsvAndSvg) {
  AblationRow row{"base", {}};
  row.report.article.f1 = 0.5;
  row.report.sentence.f1 = 1.0;
  const std::vector<AblationRow> rows = {row, {"a<b", {}}};
  std::ostringstream csv, svg;
  WriteAblationCsv(csv, rows);
  WriteAblationSvg(svg, rows);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "variant,article_precision,article_recall,article_f1,article_accuracy,"
            "sentence_precision,sentence_recall,sentence_f1,sentence_accuracy");
  EXPECT_NE(csv.str().find("base,0.0000,0.0000,0.5000,0.0000,0.0000,0.0000,1.0000,0.0000"),
            std::string::npos);
  EXPECT_EQ(svg.str().rfind("<svg", 0), 0u);
  EXPECT_NE(svg.str().find("a&lt;b"), std::string::npos);
  EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace wsdms
