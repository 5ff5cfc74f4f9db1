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

// Kernel graph attention over a conversation tree.
//
// Every post p attends over its neighbourhood N(p) plus itself. The
// neighbourhood is undirected (parent and replies) and the self-loop entry
// of the translation matrix is 1. Attention logits come either from fixed
// Gaussian kernels over translation-matrix entries scored by a trainable
// K -> 1 map, or from raw embedding dot products. One or more synchronous
// rounds replace each post by the attention-weighted sum of its
// neighbourhood, and the tree vector is the mean of the updated posts.

#ifndef WSDMS_TREE_ENCODER_H_
#define WSDMS_TREE_ENCODER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "wsdms/autodiff.h"
#include "wsdms/config.h"
#include "wsdms/corpus.h"
#include "wsdms/numerics.h"
#include "wsdms/tensor.h"

namespace wsdms {

// Square matrix over the posts of one tree: cosine similarity for neighbour
// pairs, 1 on the diagonal, 0 elsewhere.
class TranslationMatrix {
 public:
  TranslationMatrix() = default;
  explicit TranslationMatrix(std::size_t size)
      : size_(size), entries_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double operator()(std::size_t p, std::size_t q) const {
    return entries_[p * size_ + q];
  }
  double& at(std::size_t p, std::size_t q) { return entries_[p * size_ + q]; }

 private:
  std::size_t size_ = 0;
  std::vector<double> entries_;
};

// Throws DegenerateInputError naming the tree and post on a zero-norm
// embedding.
TranslationMatrix BuildTranslationMatrix(const ConversationTree& tree);

// N(p) together with p, ascending.
std::vector<std::size_t> Neighborhood(const ConversationTree& tree,
                                      std::size_t p);

enum class PostScorer { kKernel, kDotProduct };

struct TreeEncoderOptions {
  PostScorer scorer = PostScorer::kKernel;
  KernelReading reading = KernelReading::kPerNeighbor;
  std::size_t rounds = 1;
};

// Everything about a tree that depends only on its fixed embeddings.
struct TreeFeatures {
  std::vector<std::vector<std::size_t>> neighborhoods;
  // Per post, a [|N(p)| x K] matrix of kernel features, one row per member
  // of the neighbourhood.
  std::vector<Tensor> kernel_features;
  // Per post, the dot-product logits over the neighbourhood.
  std::vector<Tensor> dot_logits;
  std::vector<Tensor> embeddings;
};

TreeFeatures ComputeTreeFeatures(const ConversationTree& tree,
                                 const TranslationMatrix& m,
                                 const KernelBank& bank, KernelReading reading);

inline TreeFeatures ComputeTreeFeatures(const ConversationTree& tree,
                                        const KernelBank& bank,
                                        KernelReading reading) {
  return ComputeTreeFeatures(tree, BuildTranslationMatrix(tree), bank, reading);
}

// Trainable kernel scorer: weight [K], bias [1].
struct KernelScorer {
  ad::Var weight;
  ad::Var bias;
};

// One distribution per post over Neighborhood(p). The scorer parameters are
// ignored by the dot-product scorer.
std::vector<ad::Var> PostAttention(ad::Tape& tape, const TreeFeatures& features,
                                   const KernelScorer& scorer,
                                   PostScorer kind);

// One synchronous round: p~ = sum_{q in N(p)} gamma_pq q~.
std::vector<ad::Var> UpdatePosts(const TreeFeatures& features,
                                 std::span<const ad::Var> posts,
                                 std::span<const ad::Var> gamma);

// Elementwise mean of the updated posts.
ad::Var PoolTree(std::span<const ad::Var> posts);

struct TreeEncoding {
  std::vector<ad::Var> gamma;
  std::vector<ad::Var> posts;
  ad::Var pooled;
};

TreeEncoding EncodeTree(ad::Tape& tape, const TreeFeatures& features,
                        const KernelScorer& scorer,
                        const TreeEncoderOptions& options);

}  // namespace wsdms

#endif  // WSDMS_TREE_ENCODER_H_
