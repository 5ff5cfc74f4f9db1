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

#ifndef WSDMS_DIAGNOSTICS_H_
#define WSDMS_DIAGNOSTICS_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wsdms/config.h"
#include "wsdms/corpus.h"
#include "wsdms/model.h"
#include "wsdms/trainer.h"

namespace wsdms {

// -sum w log w in nats, with 0 log 0 = 0. Throws DegenerateInputError unless
// `w` is a distribution (non-negative, summing to 1 within 1e-9).
double AttentionEntropy(std::span<const double> w);

struct TreeEntropy {
  std::string tree_id;
  // Means over the per-post distributions of this tree.
  double kernel = 0.0;
  double dot_product = 0.0;
};

struct EntropyReport {
  // Means over every per-post distribution in the report.
  double kernel_mean = 0.0;
  double dot_product_mean = 0.0;
  std::size_t distributions = 0;
  std::vector<TreeEntropy> per_tree;
};

// Post attention entropies under the kernel scorer with the given weights
// and under plain dot-product attention, over the same trees.
EntropyReport ComputeEntropyReport(std::span<const ConversationTree> trees,
                                   const KernelBank& bank, const ParamStore& params,
                                   KernelReading reading);

EntropyReport ComputeEntropyReport(const Corpus& corpus, const Model& model);

void WriteEntropyCsv(std::ostream& out, const EntropyReport& report);

struct AblationRow {
  std::string name;  // "base" or an ablation flag name
  EvaluationReport report;
};

// Trains the base configuration and then one model per named flag, all from
// the same seed, and evaluates each on `test`.
std::vector<AblationRow> RunAblations(const Corpus& train, const Corpus& test,
                                      const TrainConfig& base,
                                      std::span<const std::string> names);

void WriteAblationCsv(std::ostream& out, std::span<const AblationRow> rows);

// Grouped bar chart of article and sentence F1 per row.
void WriteAblationSvg(std::ostream& out, std::span<const AblationRow> rows);

}  // namespace wsdms

#endif  // WSDMS_DIAGNOSTICS_H_
