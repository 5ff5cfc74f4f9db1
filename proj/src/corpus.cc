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

#include "wsdms/corpus.h"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "wsdms/errors.h"

namespace wsdms {

const char* CorpusErrorKindName(CorpusErrorKind kind) {
  switch (kind) {
    case CorpusErrorKind::kIo: return "io";
    case CorpusErrorKind::kMalformed: return "malformed record";
    case CorpusErrorKind::kDimensionMismatch: return "dimension mismatch";
    case CorpusErrorKind::kDanglingParent: return "dangling parent";
    case CorpusErrorKind::kCyclicTree: return "cyclic tree";
    case CorpusErrorKind::kRootCount: return "root count";
    case CorpusErrorKind::kDuplicateId: return "duplicate id";
    case CorpusErrorKind::kMissingEmbedding: return "missing embedding";
    case CorpusErrorKind::kMissingLabel: return "missing label";
    case CorpusErrorKind::kEmpty: return "empty";
  }
  return "unknown";
}

CorpusError::CorpusError(CorpusErrorKind kind, std::size_t line,
                         const std::string& what)
    : Error(line ? "line " + std::to_string(line) + ": " +
                       CorpusErrorKindName(kind) + ": " + what
                 : std::string(CorpusErrorKindName(kind)) + ": " + what),
      kind_(kind),
      line_(line),
      detail_(what) {}

const char* ArticleLabelName(ArticleLabel label) {
  return label == ArticleLabel::kFake ? "fake" : "real";
}

const char* SentenceLabelName(SentenceLabel label) {
  return label == SentenceLabel::kMisinforming ? "misinforming" : "clean";
}

std::optional<ArticleLabel> ParseArticleLabel(const std::string& text) {
  if (text == "fake") return ArticleLabel::kFake;
  if (text == "real") return ArticleLabel::kReal;
  return std::nullopt;
}

std::optional<SentenceLabel> ParseSentenceLabel(const std::string& text) {
  if (text == "misinforming") return SentenceLabel::kMisinforming;
  if (text == "clean") return SentenceLabel::kClean;
  return std::nullopt;
}

namespace label_audit {
namespace {
std::atomic<std::uint64_t> reads{0};
}  // namespace

std::uint64_t Reads() { return reads.load(); }
void Reset() { reads.store(0); }
void Record() { reads.fetch_add(1); }
}  // namespace label_audit

SentenceLabel QuarantinedLabel::Reveal() const {
  if (!label_) throw Error("sentence has no label");
  label_audit::Record();
  return *label_;
}

ConversationTree::ConversationTree(std::string id, std::vector<Post> posts)
    : id_(std::move(id)), posts_(std::move(posts)) {
  if (posts_.empty()) {
    throw CorpusError(CorpusErrorKind::kEmpty, 0,
                      "tree '" + id_ + "' has no posts");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    if (!index.emplace(posts_[i].id, i).second) {
      throw CorpusError(CorpusErrorKind::kDuplicateId, 0,
                        "post '" + posts_[i].id + "' repeated in tree '" +
                            id_ + "'");
    }
  }
  std::vector<std::ptrdiff_t> parent(posts_.size(), -1);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    const auto& p = posts_[i].parent;
    if (!p) {
      ++roots;
      root_ = i;
      continue;
    }
    auto it = index.find(*p);
    if (it == index.end()) {
      throw CorpusError(CorpusErrorKind::kDanglingParent, 0,
                        "post '" + posts_[i].id + "' references missing parent '" +
                            *p + "' in tree '" + id_ + "'");
    }
    parent[i] = static_cast<std::ptrdiff_t>(it->second);
  }
  // A cycle check precedes the root count so a rootless loop reports as a
  // cycle rather than a missing root.
  for (std::size_t start = 0; start < posts_.size(); ++start) {
    std::size_t steps = 0;
    for (std::ptrdiff_t cur = parent[start]; cur >= 0; cur = parent[cur]) {
      if (++steps > posts_.size() || static_cast<std::size_t>(cur) == start) {
        throw CorpusError(CorpusErrorKind::kCyclicTree, 0,
                          "post '" + posts_[start].id +
                              "' lies on a parent cycle in tree '" + id_ + "'");
      }
    }
  }
  if (roots != 1) {
    throw CorpusError(CorpusErrorKind::kRootCount, 0,
                      "tree '" + id_ + "' has " + std::to_string(roots) +
                          " roots, expected 1");
  }
  adjacency_.assign(posts_.size(), {});
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    if (parent[i] < 0) continue;
    const auto p = static_cast<std::size_t>(parent[i]);
    adjacency_[i].push_back(p);
    adjacency_[p].push_back(i);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool ConversationTree::AreNeighbors(std::size_t p, std::size_t q) const {
  const auto& list = adjacency_[p];
  return std::binary_search(list.begin(), list.end(), q);
}

namespace {

void CheckEmbedding(const Tensor& t, std::size_t dim, const std::string& where) {
  if (t.rank() != 1 || t.size() != dim) {
    throw CorpusError(CorpusErrorKind::kDimensionMismatch, 0,
                      where + " has embedding of size " +
                          std::to_string(t.size()) + ", expected " +
                          std::to_string(dim));
  }
}

}  // namespace

void ValidateCorpus(const Corpus& corpus) {
  if (corpus.dim == 0) {
    throw CorpusError(CorpusErrorKind::kMalformed, 0, "embedding dimension 0");
  }
  for (const Article& a : corpus.articles) {
    if (a.sentences.empty()) {
      throw CorpusError(CorpusErrorKind::kEmpty, 0,
                        "article '" + a.id + "' has no sentences");
    }
    CheckEmbedding(a.title.embedding, corpus.dim, "title of '" + a.id + "'");
    for (std::size_t i = 0; i < a.sentences.size(); ++i) {
      CheckEmbedding(a.sentences[i].embedding, corpus.dim,
                     "sentence " + std::to_string(i) + " of '" + a.id + "'");
    }
    for (const ConversationTree& t : a.trees) {
      if (t.size() == 0) {
        throw CorpusError(CorpusErrorKind::kEmpty, 0,
                          "tree '" + t.id() + "' has no posts");
      }
      for (const Post& p : t.posts()) {
        CheckEmbedding(p.embedding, corpus.dim, "post '" + p.id + "'");
      }
    }
  }
}

std::pair<Corpus, Corpus> SplitCorpus(const Corpus& corpus, std::size_t head) {
  head = std::min(head, corpus.articles.size());
  Corpus first{{}, corpus.dim, corpus.provenance};
  Corpus second{{}, corpus.dim, corpus.provenance};
  first.articles.assign(corpus.articles.begin(),
                        corpus.articles.begin() + static_cast<long>(head));
  second.articles.assign(corpus.articles.begin() + static_cast<long>(head),
                         corpus.articles.end());
  return {std::move(first), std::move(second)};
}

}  // namespace wsdms
