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

#include "wsdms/sentence_detector.h"

#include <algorithm>
#include <cstdio>

#include "wsdms/errors.h"

namespace wsdms {

SentenceState ContextualizeSentence(ad::Tape& tape, ad::Var embedding,
                                    std::span<const ad::Var> trees,
                                    std::span<const std::size_t> linked,
                                    bool drop_context) {
  SentenceState state;
  state.embedding = embedding;
  if (drop_context || linked.empty()) {
    state.context = tape.Constant(Tensor::Zeros(embedding.size()));
  } else {
    std::vector<ad::Var> members;
    for (std::size_t j : linked) {
      if (j >= trees.size()) throw ShapeError("link refers to a missing tree");
      members.push_back(trees[j]);
    }
    state.linked.assign(linked.begin(), linked.end());
    state.beta = ad::Softmax(ad::MatVec(ad::Stack(members), embedding));
    state.context = ad::WeightedSum(members, state.beta);
  }
  state.contextualized = ad::Concat(state.context, embedding);
  return state;
}

ad::Var PredictSentence(const SentenceState& state, const SentenceParams& params) {
  const ad::Var logits = ad::Add(ad::MatVec(params.context_weight, state.contextualized),
                                 ad::MatVec(params.embedding_weight, state.embedding));
  return ad::Softmax(ad::Add(logits, params.bias));
}

std::vector<std::pair<std::size_t, double>> TopTrees(const SentenceState& state,
                                                     std::size_t k) {
  std::vector<std::pair<std::size_t, double>> out;
  if (!state.beta.valid()) return out;
  const auto beta = state.beta.values();
  for (std::size_t i = 0; i < state.linked.size(); ++i) {
    out.emplace_back(state.linked[i], beta[i]);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

void WriteSentencePrediction(
    std::ostream& out, const std::string& article_id, std::size_t index,
    double p_misinforming,
    std::span<const std::pair<std::size_t, double>> top_trees) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", p_misinforming);
  out << article_id << '\t' << index << '\t' << buf << '\t';
  if (top_trees.empty()) out << '-';
  for (std::size_t i = 0; i < top_trees.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu:%.6f", top_trees[i].first,
                  top_trees[i].second);
    out << (i ? "," : "") << buf;
  }
  out << '\n';
}

}  // namespace wsdms
