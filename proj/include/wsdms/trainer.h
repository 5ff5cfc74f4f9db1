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

#ifndef WSDMS_TRAINER_H_
#define WSDMS_TRAINER_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsdms/config.h"
#include "wsdms/corpus.h"
#include "wsdms/metrics.h"
#include "wsdms/model.h"
#include "wsdms/param_store.h"

namespace wsdms {

// Loss of one article under `params`; adds its gradient into `grads` when
// non-null. Reads the article label only.
double ArticleObjective(const PreparedArticle& article, const ParamStore& params,
                        const TrainConfig& config, double tau, Gradients* grads);

// Mean objective over `articles`, with the mean gradient.
double BatchObjective(std::span<const PreparedArticle> articles,
                      const ParamStore& params, const TrainConfig& config,
                      double tau, Gradients* grads);

// Threshold from the untrained encoder over the whole corpus.
double CalibrateTau(const std::vector<PreparedArticle>& articles,
                    const ParamStore& params, const TrainConfig& config);

struct TrainResult {
  Model model;
  // Mean per-article loss of every epoch, measured before that epoch's
  // updates.
  std::vector<double> loss_trace;
  bool converged = false;
};

using EpochCallback = std::function<void(std::size_t epoch, double loss)>;

// Requires every article label and corpus.dim == config.dim. Sentence labels
// are never read.
TrainResult Train(const Corpus& corpus, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

struct SentencePrediction {
  double p_misinforming = 0.0;
  std::vector<std::pair<std::size_t, double>> top_trees;
};

struct ArticlePrediction {
  std::string article_id;
  double p_fake = 0.0;
  bool predicted_fake = false;
  std::vector<double> alpha;
  std::vector<SentencePrediction> sentences;
  LinkGraph links;
};

std::vector<ArticlePrediction> Predict(const Corpus& corpus, const Model& model);

struct EvaluationReport {
  Metrics article;
  Metrics sentence;
  std::size_t articles_scored = 0;
  std::size_t sentences_scored = 0;
};

// Article decision: fake iff the decision distribution puts more than 0.5 on
// fake. Sentence decision: P(misinforming) > 0.5. Unlabelled items are
// skipped.
EvaluationReport Evaluate(const Corpus& corpus, const Model& model);

// Comma-separated, with a trailing newline.
std::string FormatLossTrace(std::span<const double> trace);

}  // namespace wsdms

#endif  // WSDMS_TRAINER_H_
