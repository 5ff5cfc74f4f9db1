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

#include "wsdms/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wsdms/errors.h"
#include "wsdms/loss.h"
#include "wsdms/random.h"

namespace wsdms {

double ArticleObjective(const PreparedArticle& article, const ParamStore& params,
                        const TrainConfig& config, double tau, Gradients* grads) {
  if (!article.article->label.has_value()) {
    throw CorpusError(CorpusErrorKind::kMissingLabel, 0,
                      "article '" + article.article->id + "' has no label");
  }
  ad::Tape tape;
  const ModelVars vars = BindParameters(tape, params, config);
  const ArticleForward fw = ForwardArticle(tape, article, vars, config, tau);
  const ad::Var consistency = ConsistencyTerm(fw.global.sentences, fw.probs,
                                              config.consistency);
  const ad::Var loss = ArticleLoss(consistency, fw.y_hat, *article.article->label,
                                   config);
  if (grads != nullptr) {
    tape.Backward(loss);
    Accumulate(*grads, tape.ParameterGradients());
  }
  return loss.scalar();
}

double BatchObjective(std::span<const PreparedArticle> articles,
                      const ParamStore& params, const TrainConfig& config,
                      double tau, Gradients* grads) {
  if (articles.empty()) throw DegenerateInputError("empty batch");
  Gradients sum;
  double total = 0.0;
  for (const PreparedArticle& a : articles) {
    total += ArticleObjective(a, params, config, tau, grads ? &sum : nullptr);
  }
  const double inv = 1.0 / static_cast<double>(articles.size());
  if (grads != nullptr) Accumulate(*grads, sum, inv);
  return total * inv;
}

double CalibrateTau(const std::vector<PreparedArticle>& articles,
                    const ParamStore& params, const TrainConfig& config) {
  if (config.ablation.full_connect || config.tau_mode == TauMode::kOff) {
    return -std::numeric_limits<double>::infinity();
  }
  const std::vector<double> scores = SimilarityPopulation(articles, params, config);
  // With no trees anywhere nothing can link and the threshold is moot.
  if (scores.empty()) return 0.0;
  return ComputeTau(scores, config.tau_mode);
}

TrainResult Train(const Corpus& corpus, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  config.Validate();
  if (corpus.dim != config.dim) {
    throw ConfigError("corpus dimension " + std::to_string(corpus.dim) +
                      " differs from configured dimension " +
                      std::to_string(config.dim));
  }
  if (corpus.articles.empty()) throw DegenerateInputError("empty training corpus");
  for (const Article& a : corpus.articles) {
    if (!a.label.has_value()) {
      throw CorpusError(CorpusErrorKind::kMissingLabel, 0,
                        "article '" + a.id + "' has no label");
    }
  }

  TrainResult result;
  Model& model = result.model;
  model.config = config;
  model.bank = KernelBank::Default(config.num_kernels);
  model.params = InitParams(config);

  std::vector<PreparedArticle> working = PrepareCorpus(corpus, model.bank, config);
  model.tau = CalibrateTau(working, model.params, config);

  const std::size_t n = working.size();
  const std::size_t batch = config.batch_size == 0 ? n : std::min(config.batch_size, n);
  Rng batch_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  std::size_t quiet_epochs = 0;
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    if (batch < n) batch_rng.Shuffle(working);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t count = std::min(n, start + batch) - start;
      Gradients grads;
      const double loss =
          BatchObjective(std::span<const PreparedArticle>(working).subspan(start, count),
                         model.params, config, model.tau, &grads);
      epoch_loss += loss * static_cast<double>(count);
      AdamStep(model.params, grads, config.learning_rate);
    }
    epoch_loss /= static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) {
      throw DegenerateInputError("training loss became non-finite at epoch " +
                                 std::to_string(epoch));
    }
    if (!result.loss_trace.empty() &&
        std::abs(epoch_loss - result.loss_trace.back()) < config.convergence_tolerance) {
      ++quiet_epochs;
    } else {
      quiet_epochs = 0;
    }
    result.loss_trace.push_back(epoch_loss);
    if (on_epoch) on_epoch(epoch, epoch_loss);
    if (quiet_epochs >= config.convergence_patience) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<ArticlePrediction> Predict(const Corpus& corpus, const Model& model) {
  if (corpus.dim != model.config.dim) {
    throw ConfigError("corpus dimension " + std::to_string(corpus.dim) +
                      " differs from the model dimension " +
                      std::to_string(model.config.dim));
  }
  const std::vector<PreparedArticle> prepared =
      PrepareCorpus(corpus, model.bank, model.config);
  std::vector<ArticlePrediction> out;
  for (const PreparedArticle& article : prepared) {
    ad::Tape tape;
    const ModelVars vars = BindParameters(tape, model.params, model.config);
    const ArticleForward fw = ForwardArticle(tape, article, vars, model.config, model.tau);
    ArticlePrediction pred;
    pred.article_id = article.article->id;
    pred.p_fake = fw.decision[0];
    pred.predicted_fake = fw.decision[0] > 0.5;
    const auto alpha = fw.aggregation.alpha.values();
    pred.alpha.assign(alpha.begin(), alpha.end());
    for (std::size_t i = fw.first_sentence; i < fw.instances.size(); ++i) {
      SentencePrediction s;
      s.p_misinforming = fw.probs[i].values()[0];
      s.top_trees = TopTrees(fw.instances[i]);
      pred.sentences.push_back(std::move(s));
    }
    pred.links = fw.links;
    out.push_back(std::move(pred));
  }
  return out;
}

EvaluationReport Evaluate(const Corpus& corpus, const Model& model) {
  const std::vector<ArticlePrediction> predictions = Predict(corpus, model);
  Confusion articles;
  Confusion sentences;
  EvaluationReport report;
  for (std::size_t a = 0; a < predictions.size(); ++a) {
    const Article& article = corpus.articles[a];
    const ArticlePrediction& pred = predictions[a];
    if (article.label.has_value()) {
      articles.Add(pred.predicted_fake, *article.label == ArticleLabel::kFake);
      ++report.articles_scored;
    }
    for (std::size_t i = 0; i < article.sentences.size(); ++i) {
      const QuarantinedLabel& label = article.sentences[i].label;
      if (!label.present()) continue;
      sentences.Add(pred.sentences[i].p_misinforming > 0.5,
                    label.Reveal() == SentenceLabel::kMisinforming);
      ++report.sentences_scored;
    }
  }
  report.article = ComputeMetrics(articles);
  report.sentence = ComputeMetrics(sentences);
  return report;
}

std::string FormatLossTrace(std::span<const double> trace) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", trace[i]);
    if (i) out += ',';
    out += buf;
  }
  out += '\n';
  return out;
}

}  // namespace wsdms
