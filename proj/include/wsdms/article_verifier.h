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

#ifndef WSDMS_ARTICLE_VERIFIER_H_
#define WSDMS_ARTICLE_VERIFIER_H_

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wsdms/autodiff.h"

namespace wsdms {

// One self-attention block over a [L x d] sequence:
//   H = X + concat_h(softmax(Q_h K_h^T / sqrt(d_h)) V_h) Wo^T
//   Y = H + tanh(H W1^T + b1) W2^T + b2
// Weight matrices are stored [out x in].
struct EncoderBlockParams {
  ad::Var query;           // [d x d]
  ad::Var key;             // [d x d]
  ad::Var value;           // [d x d]
  ad::Var output;          // [d x d]
  ad::Var ffn_in_weight;   // [f x d]
  ad::Var ffn_in_bias;     // [f]
  ad::Var ffn_out_weight;  // [d x f]
  ad::Var ffn_out_bias;    // [d]
};

struct GlobalEncoderParams {
  ad::Var projection;  // [d x 2d], no bias
  std::vector<EncoderBlockParams> blocks;
  std::size_t heads = 1;
};

ad::Var EncoderBlock(ad::Var sequence, const EncoderBlockParams& params,
                     std::size_t heads);

struct GlobalEncoding {
  ad::Var title;                   // T^ [d]
  std::vector<ad::Var> sentences;  // s^_i [d]
};

// Encodes [title, P s~_1, ..., P s~_n]. Throws DegenerateInputError for an
// empty sentence list.
GlobalEncoding GlobalEncode(ad::Var title, std::span<const ad::Var> contextualized,
                            const GlobalEncoderParams& params);

struct Aggregation {
  ad::Var alpha;  // softmax_i(s^_i . T^)
  ad::Var y_hat;  // sum_i alpha_i p^_i, read as [P(fake), P(real)]
};

Aggregation Aggregate(ad::Var title, std::span<const ad::Var> sentences,
                      std::span<const ad::Var> probs);

// [1, 0] when some instance has P(misinforming) > 0.5, else [0, 1].
std::array<double, 2> AggregateThresholdMil(std::span<const double> p_misinforming);

// Differentiable stand-in for the hard rule above: the distribution of the
// instance with the largest P(misinforming) (first one on ties).
ad::Var MaxInstance(std::span<const ad::Var> probs);

// "article_id<TAB>p_fake<TAB>a_1,a_2,...".
void WriteArticlePrediction(std::ostream& out, const std::string& article_id,
                            double p_fake, std::span<const double> alpha);

}  // namespace wsdms

#endif  // WSDMS_ARTICLE_VERIFIER_H_
