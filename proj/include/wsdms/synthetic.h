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

#ifndef WSDMS_SYNTHETIC_H_
#define WSDMS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsdms/corpus.h"

namespace wsdms {

// Geometry of a generated corpus.
//
// A global unit "stance" axis u is drawn first. Every sentence is
//   s = normalize(topic + a * u + noise)
// with topics orthogonal to u and, where the dimension allows, to each
// other within an article. Each misinforming sentence receives a refuting
// tree whose posts scatter around normalize(topic - a * u): topically aligned
// with the sentence, so threshold linking keeps it, but anticorrelated along
// the stance axis. Clean sentences receive supportive trees
// (normalize(topic + a * u)) or neutral ones (topic alone). Trees beyond one
// per sentence are neutral. Sentence embeddings carry no label signal on
// their own; the label is only recoverable through the linked trees.
struct SyntheticConfig {
  std::size_t num_articles = 50;
  std::size_t sentences_per_article = 5;
  std::size_t trees_per_article = 6;
  std::size_t posts_per_tree = 5;
  std::size_t dim = 32;
  // Per-sentence probability of being misinforming inside a fake article.
  double misinform_rate = 0.3;
  // Norm of the isotropic perturbation added to every embedding.
  double noise = 0.0;
  double fake_fraction = 0.5;
  // Stance strength a.
  double stance = 0.4;
  // Post scatter around the tree centre, independent of `noise`.
  double post_jitter = 0.25;
  // Probability that a reply repeats its parent verbatim (a reshare).
  double reshare_rate = 0.2;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void Validate() const;
};

Corpus GenerateSynthetic(const SyntheticConfig& config);

// Label-free reference classifier: each sentence is matched to the tree whose
// mean post embedding is topically closest (stance axis projected out), and
// flagged misinforming when that mean leans against the stance axis by more
// than half the planted stance `stance`. Needs provenance.stance_axis.
std::vector<std::vector<bool>> NearestEvidenceOracle(const Corpus& corpus,
                                                     double stance = 0.4);

}  // namespace wsdms

#endif  // WSDMS_SYNTHETIC_H_
