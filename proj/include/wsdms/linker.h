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

#ifndef WSDMS_LINKER_H_
#define WSDMS_LINKER_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsdms/config.h"
#include "wsdms/tensor.h"

namespace wsdms {

// [n x m] matrix of cosine similarities between sentence i and tree j.
Tensor SimilarityTable(std::span<const Tensor> sentences,
                       std::span<const Tensor> trees);

// Global threshold from the corpus-wide score population. kOff returns
// -infinity so that every pair links. Throws DegenerateInputError on an
// empty population.
double ComputeTau(std::span<const double> scores, TauMode mode);

enum class LinkMode { kThreshold, kFull };

struct LinkGraph {
  std::size_t num_sentences = 0;
  std::size_t num_trees = 0;
  double tau = 0.0;
  // (sentence, tree) pairs in row-major order, with their scores.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<double> scores;
  // Per sentence, the linked tree indices in ascending order.
  std::vector<std::vector<std::size_t>> linked;

  std::vector<std::size_t> Unlinked() const;
};

// Threshold mode keeps pairs scoring strictly above tau.
LinkGraph BuildLinks(const Tensor& table, double tau, LinkMode mode);

// "# <article_id>" followed by one "sentence_i<TAB>tree_j<TAB>score" line
// per edge.
void WriteLinkGraph(std::ostream& out, const std::string& article_id,
                    const LinkGraph& links);

}  // namespace wsdms

#endif  // WSDMS_LINKER_H_
