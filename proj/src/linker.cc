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

#include "wsdms/linker.h"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "wsdms/errors.h"
#include "wsdms/numerics.h"

namespace wsdms {

Tensor SimilarityTable(std::span<const Tensor> sentences,
                       std::span<const Tensor> trees) {
  Tensor table({sentences.size(), trees.size()});
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      table.at(i, j) = CosineSimilarity(sentences[i].values(), trees[j].values());
    }
  }
  return table;
}

double ComputeTau(std::span<const double> scores, TauMode mode) {
  if (scores.empty()) throw DegenerateInputError("no similarity scores for tau");
  switch (mode) {
    case TauMode::kRangeMidpoint: {
      const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
      return 0.5 * (*lo + *hi);
    }
    case TauMode::kMedian: {
      std::vector<double> sorted(scores.begin(), scores.end());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t h = sorted.size() / 2;
      return sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    }
    case TauMode::kOff:
      return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError("unknown tau mode");
}

std::vector<std::size_t> LinkGraph::Unlinked() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < linked.size(); ++i) {
    if (linked[i].empty()) out.push_back(i);
  }
  return out;
}

LinkGraph BuildLinks(const Tensor& table, double tau, LinkMode mode) {
  if (table.rank() != 2) throw ShapeError("similarity table must be a matrix");
  LinkGraph g;
  g.num_sentences = table.shape()[0];
  g.num_trees = table.shape()[1];
  g.tau = tau;
  g.linked.resize(g.num_sentences);
  for (std::size_t i = 0; i < g.num_sentences; ++i) {
    for (std::size_t j = 0; j < g.num_trees; ++j) {
      const double score = table.at(i, j);
      if (mode == LinkMode::kFull || score > tau) {
        g.edges.emplace_back(i, j);
        g.scores.push_back(score);
        g.linked[i].push_back(j);
      }
    }
  }
  return g;
}

void WriteLinkGraph(std::ostream& out, const std::string& article_id,
                    const LinkGraph& links) {
  out << "# " << article_id << '\n';
  char buf[32];
  for (std::size_t e = 0; e < links.edges.size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.6f", links.scores[e]);
    out << links.edges[e].first << '\t' << links.edges[e].second << '\t' << buf
        << '\n';
  }
}

}  // namespace wsdms
