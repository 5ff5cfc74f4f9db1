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

#include "wsdms/model.h"

#include <cmath>
#include <string>

#include "wsdms/errors.h"
#include "wsdms/random.h"

namespace wsdms {
namespace {

std::string BlockName(std::size_t b, const char* field) {
  return "encoder.block" + std::to_string(b) + "." + field;
}

Tensor RandomMatrix(Rng& rng, std::size_t rows, std::size_t cols) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  return Tensor::Matrix(rows, cols, rng.NormalVector(rows * cols, scale));
}

}  // namespace

ParamStore InitParams(const TrainConfig& config) {
  config.Validate();
  const std::size_t d = config.dim;
  const std::size_t k = config.num_kernels;
  const std::size_t f = config.ffn_width == 0 ? d : config.ffn_width;
  Rng rng(config.seed);
  ParamStore p;
  p.Add("kernel.weight",
        Tensor::Vector(rng.NormalVector(k, 1.0 / std::sqrt(static_cast<double>(k)))));
  p.Add("kernel.bias", Tensor::Zeros(1));
  p.Add("sentence.context_weight", RandomMatrix(rng, 2, 2 * d));
  p.Add("sentence.embedding_weight", RandomMatrix(rng, 2, d));
  p.Add("sentence.bias", Tensor::Zeros(2));
  p.Add("encoder.projection", RandomMatrix(rng, d, 2 * d));
  for (std::size_t b = 0; b < config.encoder_layers; ++b) {
    p.Add(BlockName(b, "query"), RandomMatrix(rng, d, d));
    p.Add(BlockName(b, "key"), RandomMatrix(rng, d, d));
    p.Add(BlockName(b, "value"), RandomMatrix(rng, d, d));
    p.Add(BlockName(b, "output"), RandomMatrix(rng, d, d));
    p.Add(BlockName(b, "ffn_in_weight"), RandomMatrix(rng, f, d));
    p.Add(BlockName(b, "ffn_in_bias"), Tensor::Zeros(f));
    p.Add(BlockName(b, "ffn_out_weight"), RandomMatrix(rng, d, f));
    p.Add(BlockName(b, "ffn_out_bias"), Tensor::Zeros(d));
  }
  return p;
}

ModelVars BindParameters(ad::Tape& tape, const ParamStore& params,
                         const TrainConfig& config) {
  ModelVars v;
  v.scorer.weight = tape.Parameter(params, "kernel.weight");
  v.scorer.bias = tape.Parameter(params, "kernel.bias");
  v.sentence.context_weight = tape.Parameter(params, "sentence.context_weight");
  v.sentence.embedding_weight = tape.Parameter(params, "sentence.embedding_weight");
  v.sentence.bias = tape.Parameter(params, "sentence.bias");
  v.encoder.projection = tape.Parameter(params, "encoder.projection");
  v.encoder.heads = config.encoder_heads;
  for (std::size_t b = 0; b < config.encoder_layers; ++b) {
    EncoderBlockParams block;
    block.query = tape.Parameter(params, BlockName(b, "query"));
    block.key = tape.Parameter(params, BlockName(b, "key"));
    block.value = tape.Parameter(params, BlockName(b, "value"));
    block.output = tape.Parameter(params, BlockName(b, "output"));
    block.ffn_in_weight = tape.Parameter(params, BlockName(b, "ffn_in_weight"));
    block.ffn_in_bias = tape.Parameter(params, BlockName(b, "ffn_in_bias"));
    block.ffn_out_weight = tape.Parameter(params, BlockName(b, "ffn_out_weight"));
    block.ffn_out_bias = tape.Parameter(params, BlockName(b, "ffn_out_bias"));
    v.encoder.blocks.push_back(block);
  }
  return v;
}

PreparedArticle PrepareArticle(const Article& article, const KernelBank& bank,
                               const TrainConfig& config) {
  if (article.sentences.empty()) {
    throw DegenerateInputError("article '" + article.id + "' has no sentences");
  }
  PreparedArticle prepared;
  prepared.article = &article;
  for (const ConversationTree& tree : article.trees) {
    prepared.trees.push_back(ComputeTreeFeatures(tree, bank, config.kernel_reading));
  }
  if (config.ablation.title_as_sentence) {
    prepared.instances.push_back(article.title.embedding);
    prepared.first_sentence = 1;
  }
  for (const Sentence& s : article.sentences) prepared.instances.push_back(s.embedding);
  return prepared;
}

std::vector<PreparedArticle> PrepareCorpus(const Corpus& corpus,
                                           const KernelBank& bank,
                                           const TrainConfig& config) {
  std::vector<PreparedArticle> out;
  out.reserve(corpus.articles.size());
  for (const Article& a : corpus.articles) out.push_back(PrepareArticle(a, bank, config));
  return out;
}

TreeEncoderOptions EncoderOptions(const TrainConfig& config) {
  TreeEncoderOptions options;
  options.scorer = config.ablation.no_kernel ? PostScorer::kDotProduct : PostScorer::kKernel;
  options.reading = config.kernel_reading;
  options.rounds = config.propagation_rounds;
  return options;
}

ArticleForward ForwardArticle(ad::Tape& tape, const PreparedArticle& article,
                              const ModelVars& vars, const TrainConfig& config,
                              double tau) {
  ArticleForward fw;
  fw.first_sentence = article.first_sentence;
  const TreeEncoderOptions options = EncoderOptions(config);

  std::vector<ad::Var> pooled;
  std::vector<Tensor> pooled_values;
  for (const TreeFeatures& tree : article.trees) {
    fw.trees.push_back(EncodeTree(tape, tree, vars.scorer, options));
    pooled.push_back(fw.trees.back().pooled);
    pooled_values.push_back(pooled.back().value());
  }

  fw.similarity = SimilarityTable(article.instances, pooled_values);
  fw.links = BuildLinks(fw.similarity, tau,
                        config.ablation.full_connect ? LinkMode::kFull
                                                     : LinkMode::kThreshold);

  std::vector<ad::Var> contextualized;
  for (std::size_t i = 0; i < article.instances.size(); ++i) {
    SentenceState state =
        ContextualizeSentence(tape, tape.Constant(article.instances[i]), pooled,
                              fw.links.linked[i], config.ablation.no_trees);
    state.probs = PredictSentence(state, vars.sentence);
    fw.probs.push_back(state.probs);
    contextualized.push_back(state.contextualized);
    fw.instances.push_back(std::move(state));
  }

  fw.global = GlobalEncode(tape.Constant(article.article->title.embedding),
                           contextualized, vars.encoder);
  fw.aggregation = Aggregate(fw.global.title, fw.global.sentences, fw.probs);

  if (config.ablation.threshold_mil) {
    fw.y_hat = MaxInstance(fw.probs);
    std::vector<double> p_mis;
    for (const ad::Var& p : fw.probs) p_mis.push_back(p.values()[0]);
    fw.decision = AggregateThresholdMil(p_mis);
  } else {
    fw.y_hat = fw.aggregation.y_hat;
    fw.decision = {fw.y_hat.values()[0], fw.y_hat.values()[1]};
  }
  return fw;
}

std::vector<double> SimilarityPopulation(const std::vector<PreparedArticle>& articles,
                                         const ParamStore& params,
                                         const TrainConfig& config) {
  const TreeEncoderOptions options = EncoderOptions(config);
  std::vector<double> scores;
  for (const PreparedArticle& article : articles) {
    ad::Tape tape;
    const ModelVars vars = BindParameters(tape, params, config);
    std::vector<Tensor> pooled;
    for (const TreeFeatures& tree : article.trees) {
      pooled.push_back(EncodeTree(tape, tree, vars.scorer, options).pooled.value());
    }
    const Tensor table = SimilarityTable(article.instances, pooled);
    scores.insert(scores.end(), table.values().begin(), table.values().end());
  }
  return scores;
}

}  // namespace wsdms
