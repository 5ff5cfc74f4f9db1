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

#include "wsdms/loss.h"

#include <vector>

#include "wsdms/errors.h"

namespace wsdms {

ad::Var ConsistencyTerm(std::span<const ad::Var> representations,
                        std::span<const ad::Var> probs,
                        ConsistencyVariant variant) {
  const std::size_t n = representations.size();
  if (n == 0 || probs.size() != n) {
    throw ShapeError("consistency needs one prediction per representation");
  }
  ad::Tape& tape = *representations.front().tape();
  // Diagonal pairs contribute exp(0) = 1 or 0 * 1 = 0; off-diagonal pairs
  // are symmetric and counted twice.
  ad::Var total = tape.Constant(
      Tensor::Scalar(variant == ConsistencyVariant::kExponentProduct
                         ? static_cast<double>(n)
                         : 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ad::Var ds = ad::SquaredNorm(ad::Sub(representations[i], representations[j]));
      const ad::Var dp = ad::SquaredNorm(ad::Sub(probs[i], probs[j]));
      const ad::Var term =
          variant == ConsistencyVariant::kExponentProduct
              ? ad::Exp(ad::Scale(ad::Mul(ds, dp), -1.0))
              : ad::Mul(ad::Exp(ad::Scale(ds, -1.0)), dp);
      total = ad::Add(total, ad::Scale(term, 2.0));
    }
  }
  return ad::Scale(total, 1.0 / static_cast<double>(n * n));
}

Tensor LabelTarget(ArticleLabel label) {
  return label == ArticleLabel::kFake ? Tensor::Vector({1.0, 0.0})
                                      : Tensor::Vector({0.0, 1.0});
}

ad::Var SquaredError(ad::Var y_hat, ArticleLabel label) {
  if (y_hat.size() != 2) throw ShapeError("article distribution must have 2 classes");
  return ad::SquaredNorm(ad::Sub(y_hat.tape()->Constant(LabelTarget(label)), y_hat));
}

ad::Var NegativeLogLikelihood(ad::Var y_hat, ArticleLabel label) {
  if (y_hat.size() != 2) throw ShapeError("article distribution must have 2 classes");
  const ad::Var p = ad::Select(y_hat, static_cast<std::size_t>(label));
  return ad::Scale(ad::Log(p), -1.0);
}

ad::Var ArticleLoss(ad::Var consistency, ad::Var y_hat, ArticleLabel label,
                    const TrainConfig& config) {
  if (config.ablation.nll_loss) return NegativeLogLikelihood(y_hat, label);
  return ad::Add(ad::Scale(consistency, config.lambda),
                 ad::Scale(SquaredError(y_hat, label), 1.0 - config.lambda));
}

}  // namespace wsdms
