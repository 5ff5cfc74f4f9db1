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

#ifndef WSDMS_SENTENCE_DETECTOR_H_
#define WSDMS_SENTENCE_DETECTOR_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsdms/autodiff.h"

namespace wsdms {

// Instance classifier weights. Output index 0 is "misinforming".
struct SentenceParams {
  ad::Var context_weight;    // [2 x 2d]
  ad::Var embedding_weight;  // [2 x d]
  ad::Var bias;              // [2]
};

struct SentenceState {
  ad::Var embedding;       // s [d]
  ad::Var context;         // sum_j beta_j t_j, or zeros when unlinked [d]
  ad::Var contextualized;  // context ++ s [2d]
  std::vector<std::size_t> linked;
  ad::Var beta;            // over `linked`; invalid when unlinked
  ad::Var probs;           // [P(misinforming), P(clean)]; set by PredictSentence
};

// beta = softmax_j(t_j . s) over the linked trees. An empty `linked` set, or
// `drop_context`, yields a zero context vector.
SentenceState ContextualizeSentence(ad::Tape& tape, ad::Var embedding,
                                    std::span<const ad::Var> trees,
                                    std::span<const std::size_t> linked,
                                    bool drop_context = false);

// softmax(W2 s~ + W3 s + b2).
ad::Var PredictSentence(const SentenceState& state, const SentenceParams& params);

// Up to `k` (tree, weight) pairs with the largest beta, heaviest first.
std::vector<std::pair<std::size_t, double>> TopTrees(const SentenceState& state,
                                                     std::size_t k = 3);

// "article_id<TAB>sent_idx<TAB>p_misinforming<TAB>j:w,j:w,j:w"; the last
// column is "-" for an unlinked sentence.
void WriteSentencePrediction(
    std::ostream& out, const std::string& article_id, std::size_t index,
    double p_misinforming,
    std::span<const std::pair<std::size_t, double>> top_trees);

}  // namespace wsdms

#endif  // WSDMS_SENTENCE_DETECTOR_H_
