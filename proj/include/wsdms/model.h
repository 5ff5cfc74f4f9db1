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

// End-to-end forward pass for one article:
//   trees -> kernel attention -> pooled tree vectors
//   sentence/tree cosine -> links above tau
//   linked trees -> contextualized sentences -> instance distributions
//   [title, sentences] -> self-attention -> title-weighted aggregation

#ifndef WSDMS_MODEL_H_
#define WSDMS_MODEL_H_

#include <array>
#include <cstddef>
#include <vector>

#include "wsdms/article_verifier.h"
#include "wsdms/autodiff.h"
#include "wsdms/config.h"
#include "wsdms/corpus.h"
#include "wsdms/linker.h"
#include "wsdms/numerics.h"
#include "wsdms/param_store.h"
#include "wsdms/sentence_detector.h"
#include "wsdms/tree_encoder.h"

namespace wsdms {

struct Model {
  TrainConfig config;
  KernelBank bank;
  // Frozen linking threshold; -infinity links everything.
  double tau = 0.0;
  ParamStore params;
};

// Seeded from config.seed.
ParamStore InitParams(const TrainConfig& config);

struct ModelVars {
  KernelScorer scorer;
  SentenceParams sentence;
  GlobalEncoderParams encoder;
};

ModelVars BindParameters(ad::Tape& tape, const ParamStore& params,
                         const TrainConfig& config);

// Parameter-independent inputs of one article, computed once.
struct PreparedArticle {
  const Article* article = nullptr;
  std::vector<TreeFeatures> trees;
  // Instance embeddings: the sentences, preceded by the title when it is
  // treated as a sentence.
  std::vector<Tensor> instances;
  // 1 when instances[0] is the title.
  std::size_t first_sentence = 0;
};

PreparedArticle PrepareArticle(const Article& article, const KernelBank& bank,
                               const TrainConfig& config);
std::vector<PreparedArticle> PrepareCorpus(const Corpus& corpus,
                                           const KernelBank& bank,
                                           const TrainConfig& config);

TreeEncoderOptions EncoderOptions(const TrainConfig& config);

struct ArticleForward {
  std::vector<TreeEncoding> trees;
  Tensor similarity;
  LinkGraph links;
  std::vector<SentenceState> instances;
  std::vector<ad::Var> probs;
  GlobalEncoding global;
  Aggregation aggregation;
  // Distribution fed to the loss: the weighted aggregate, or the
  // most-misinforming instance under threshold_mil.
  ad::Var y_hat;
  // Distribution used for the article decision.
  std::array<double, 2> decision{};
  std::size_t first_sentence = 0;
};

ArticleForward ForwardArticle(ad::Tape& tape, const PreparedArticle& article,
                              const ModelVars& vars, const TrainConfig& config,
                              double tau);

// Cosines between every instance and every pooled tree of every article,
// under the given parameters.
std::vector<double> SimilarityPopulation(const std::vector<PreparedArticle>& articles,
                                         const ParamStore& params,
                                         const TrainConfig& config);

}  // namespace wsdms

#endif  // WSDMS_MODEL_H_
