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

#include "wsdms/tree_encoder.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsdms/errors.h"

namespace wsdms {
namespace {

// log sum_q phi_k(m_q), evaluated in log space so that narrow kernels do not
// underflow.
std::vector<double> LogSumKernelFeature(std::span<const double> entries,
                                        const KernelBank& bank) {
  std::vector<double> out(bank.size());
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const double denom = 2.0 * bank.widths[k] * bank.widths[k];
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> exponents;
    for (double m : entries) {
      const double diff = m - bank.means[k];
      exponents.push_back(-diff * diff / denom);
      top = std::max(top, exponents.back());
    }
    double acc = 0.0;
    for (double e : exponents) acc += std::exp(e - top);
    out[k] = top + std::log(acc);
  }
  return out;
}

}  // namespace

TranslationMatrix BuildTranslationMatrix(const ConversationTree& tree) {
  const std::size_t n = tree.size();
  TranslationMatrix m(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (!(Norm(tree.posts()[p].embedding.values()) > 0.0)) {
      throw DegenerateInputError("tree '" + tree.id() + "' post '" +
                                 tree.posts()[p].id + "' has a zero embedding");
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    m.at(p, p) = 1.0;
    for (std::size_t q : tree.neighbors(p)) {
      m.at(p, q) = CosineSimilarity(tree.posts()[p].embedding.values(),
                                    tree.posts()[q].embedding.values());
    }
  }
  return m;
}

std::vector<std::size_t> Neighborhood(const ConversationTree& tree,
                                      std::size_t p) {
  std::vector<std::size_t> out = tree.neighbors(p);
  out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

TreeFeatures ComputeTreeFeatures(const ConversationTree& tree,
                                 const TranslationMatrix& m,
                                 const KernelBank& bank, KernelReading reading) {
  bank.Validate();
  const std::size_t n = tree.size();
  const std::size_t k = bank.size();
  TreeFeatures f;
  for (std::size_t p = 0; p < n; ++p) {
    f.neighborhoods.push_back(Neighborhood(tree, p));
    f.embeddings.push_back(tree.posts()[p].embedding);
  }

  std::vector<std::vector<double>> node_feature;
  if (reading == KernelReading::kNodeLogSum) {
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<double> entries;
      for (std::size_t r : f.neighborhoods[q]) entries.push_back(m(q, r));
      node_feature.push_back(LogSumKernelFeature(entries, bank));
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    const auto& hood = f.neighborhoods[p];
    std::vector<double> rows;
    rows.reserve(hood.size() * k);
    std::vector<double> dots;
    for (std::size_t q : hood) {
      const std::vector<double> phi = reading == KernelReading::kPerNeighbor
                                          ? GaussianKernelVector(m(p, q), bank)
                                          : node_feature[q];
      rows.insert(rows.end(), phi.begin(), phi.end());
      dots.push_back(Dot(f.embeddings[p].values(), f.embeddings[q].values()));
    }
    f.kernel_features.push_back(Tensor::Matrix(hood.size(), k, std::move(rows)));
    f.dot_logits.push_back(Tensor::Vector(std::move(dots)));
  }
  return f;
}

std::vector<ad::Var> PostAttention(ad::Tape& tape, const TreeFeatures& features,
                                   const KernelScorer& scorer,
                                   PostScorer kind) {
  std::vector<ad::Var> gamma;
  gamma.reserve(features.neighborhoods.size());
  for (std::size_t p = 0; p < features.neighborhoods.size(); ++p) {
    ad::Var logits;
    if (kind == PostScorer::kKernel) {
      logits = ad::AddBroadcast(
          ad::MatVec(tape.Constant(features.kernel_features[p]), scorer.weight),
          scorer.bias);
    } else {
      logits = tape.Constant(features.dot_logits[p]);
    }
    gamma.push_back(ad::Softmax(logits));
  }
  return gamma;
}

std::vector<ad::Var> UpdatePosts(const TreeFeatures& features,
                                 std::span<const ad::Var> posts,
                                 std::span<const ad::Var> gamma) {
  if (posts.size() != features.neighborhoods.size() ||
      gamma.size() != posts.size()) {
    throw ShapeError("post and attention counts disagree with the tree");
  }
  std::vector<ad::Var> out;
  out.reserve(posts.size());
  for (std::size_t p = 0; p < posts.size(); ++p) {
    std::vector<ad::Var> members;
    for (std::size_t q : features.neighborhoods[p]) members.push_back(posts[q]);
    out.push_back(ad::WeightedSum(members, gamma[p]));
  }
  return out;
}

ad::Var PoolTree(std::span<const ad::Var> posts) {
  if (posts.empty()) throw DegenerateInputError("cannot pool an empty tree");
  return ad::MeanOf(posts);
}

TreeEncoding EncodeTree(ad::Tape& tape, const TreeFeatures& features,
                        const KernelScorer& scorer,
                        const TreeEncoderOptions& options) {
  if (options.rounds < 1) throw ConfigError("need at least one round");
  TreeEncoding enc;
  enc.gamma = PostAttention(tape, features, scorer, options.scorer);
  for (const Tensor& e : features.embeddings) enc.posts.push_back(tape.Constant(e));
  for (std::size_t r = 0; r < options.rounds; ++r) {
    enc.posts = UpdatePosts(features, enc.posts, enc.gamma);
  }
  enc.pooled = PoolTree(enc.posts);
  return enc;
}

}  // namespace wsdms
