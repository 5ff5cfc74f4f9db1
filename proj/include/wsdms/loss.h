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

#ifndef WSDMS_LOSS_H_
#define WSDMS_LOSS_H_

#include <span>

#include "wsdms/autodiff.h"
#include "wsdms/config.h"
#include "wsdms/corpus.h"

namespace wsdms {

// Pairwise coupling of instance representations and predictions, averaged
// over all n^2 ordered pairs (diagonal included), so the exponent-product
// variant lies in (0, 1].
ad::Var ConsistencyTerm(std::span<const ad::Var> representations,
                        std::span<const ad::Var> probs,
                        ConsistencyVariant variant);

// One-hot target: kFake -> [1, 0], kReal -> [0, 1].
Tensor LabelTarget(ArticleLabel label);

// |y - y_hat|^2.
ad::Var SquaredError(ad::Var y_hat, ArticleLabel label);

// -log y_hat[label].
ad::Var NegativeLogLikelihood(ad::Var y_hat, ArticleLabel label);

// lambda * consistency + (1 - lambda) * |y - y_hat|^2, or the negative
// log-likelihood alone when config.ablation.nll_loss is set.
ad::Var ArticleLoss(ad::Var consistency, ad::Var y_hat, ArticleLabel label,
                    const TrainConfig& config);

}  // namespace wsdms

#endif  // WSDMS_LOSS_H_
