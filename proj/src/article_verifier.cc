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

#include "wsdms/article_verifier.h"

#include <cmath>
#include <cstdio>

#include "wsdms/errors.h"

namespace wsdms {

ad::Var EncoderBlock(ad::Var sequence, const EncoderBlockParams& params,
                     std::size_t heads) {
  const Tensor& x = sequence.value();
  if (x.rank() != 2) throw ShapeError("encoder input must be a matrix");
  const std::size_t d = x.cols();
  if (heads == 0 || d % heads != 0) throw ConfigError("heads must divide width");
  const std::size_t dh = d / heads;

  const ad::Var q = ad::MatMulTransposed(sequence, params.query);
  const ad::Var k = ad::MatMulTransposed(sequence, params.key);
  const ad::Var v = ad::MatMulTransposed(sequence, params.value);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  std::vector<ad::Var> head_out;
  for (std::size_t h = 0; h < heads; ++h) {
    ad::Var qh = q, kh = k, vh = v;
    if (heads > 1) {
      qh = ad::ColumnSlice(q, h * dh, dh);
      kh = ad::ColumnSlice(k, h * dh, dh);
      vh = ad::ColumnSlice(v, h * dh, dh);
    }
    const ad::Var weights =
        ad::SoftmaxRows(ad::Scale(ad::MatMulTransposed(qh, kh), scale));
    head_out.push_back(ad::MatMul(weights, vh));
  }
  const ad::Var mixed = heads > 1 ? ad::ConcatColumns(head_out) : head_out.front();
  const ad::Var h1 = ad::Add(sequence, ad::MatMulTransposed(mixed, params.output));

  const ad::Var hidden = ad::Tanh(ad::AddBroadcast(
      ad::MatMulTransposed(h1, params.ffn_in_weight), params.ffn_in_bias));
  const ad::Var ffn = ad::AddBroadcast(
      ad::MatMulTransposed(hidden, params.ffn_out_weight), params.ffn_out_bias);
  return ad::Add(h1, ffn);
}

GlobalEncoding GlobalEncode(ad::Var title, std::span<const ad::Var> contextualized,
                            const GlobalEncoderParams& params) {
  if (contextualized.empty()) {
    throw DegenerateInputError("article has no sentences to encode");
  }
  std::vector<ad::Var> rows = {title};
  for (const ad::Var& s : contextualized) {
    rows.push_back(ad::MatVec(params.projection, s));
  }
  ad::Var x = ad::Stack(rows);
  for (const EncoderBlockParams& block : params.blocks) {
    x = EncoderBlock(x, block, params.heads);
  }
  GlobalEncoding enc;
  enc.title = ad::Row(x, 0);
  for (std::size_t i = 1; i < rows.size(); ++i) enc.sentences.push_back(ad::Row(x, i));
  return enc;
}

Aggregation Aggregate(ad::Var title, std::span<const ad::Var> sentences,
                      std::span<const ad::Var> probs) {
  if (sentences.empty() || sentences.size() != probs.size()) {
    throw ShapeError("aggregation needs one distribution per sentence");
  }
  Aggregation agg;
  agg.alpha = ad::Softmax(ad::MatVec(ad::Stack(sentences), title));
  agg.y_hat = ad::WeightedSum(probs, agg.alpha);
  return agg;
}

std::array<double, 2> AggregateThresholdMil(std::span<const double> p_misinforming) {
  for (double p : p_misinforming) {
    if (p > 0.5) return {1.0, 0.0};
  }
  return {0.0, 1.0};
}

ad::Var MaxInstance(std::span<const ad::Var> probs) {
  if (probs.empty()) throw DegenerateInputError("no instances");
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i].values()[0] > probs[best].values()[0]) best = i;
  }
  return probs[best];
}

void WriteArticlePrediction(std::ostream& out, const std::string& article_id,
                            double p_fake, std::span<const double> alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p_fake);
  out << article_id << '\t' << buf << '\t';
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6f", alpha[i]);
    out << (i ? "," : "") << buf;
  }
  out << '\n';
}

}  // namespace wsdms
