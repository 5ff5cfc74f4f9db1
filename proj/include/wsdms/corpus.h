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

#ifndef WSDMS_CORPUS_H_
#define WSDMS_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsdms/tensor.h"

namespace wsdms {

enum class ArticleLabel { kFake = 0, kReal = 1 };
// Index 0 is the positive (misinforming) class everywhere in the model.
enum class SentenceLabel { kMisinforming = 0, kClean = 1 };

const char* ArticleLabelName(ArticleLabel label);
const char* SentenceLabelName(SentenceLabel label);
std::optional<ArticleLabel> ParseArticleLabel(const std::string& text);
std::optional<SentenceLabel> ParseSentenceLabel(const std::string& text);

// Counts every read of a sentence-level label. Training only ever sees
// article labels; tests reset the counter, train, and assert it stayed 0.
namespace label_audit {
std::uint64_t Reads();
void Reset();
}  // namespace label_audit

// Sentence-level ground truth, readable only through an audited accessor.
class QuarantinedLabel {
 public:
  QuarantinedLabel() = default;
  explicit QuarantinedLabel(SentenceLabel label) : label_(label) {}

  bool present() const { return label_.has_value(); }
  // Throws wsdms::Error when no label is present.
  SentenceLabel Reveal() const;

  friend bool operator==(const QuarantinedLabel&,
                         const QuarantinedLabel&) = default;

 private:
  std::optional<SentenceLabel> label_;
};

struct Post {
  std::string id;
  std::optional<std::string> parent;
  std::string text;
  Tensor embedding;

  friend bool operator==(const Post&, const Post&) = default;
};

class ConversationTree {
 public:
  ConversationTree() = default;
  // Validates single root, dangling parents, cycles and duplicate ids, then
  // derives the undirected parent-child adjacency. Throws CorpusError.
  ConversationTree(std::string id, std::vector<Post> posts);

  const std::string& id() const { return id_; }
  const std::vector<Post>& posts() const { return posts_; }
  std::size_t size() const { return posts_.size(); }
  std::size_t root() const { return root_; }
  // Undirected neighbours of post p, ascending, self excluded.
  const std::vector<std::size_t>& neighbors(std::size_t p) const {
    return adjacency_[p];
  }
  bool AreNeighbors(std::size_t p, std::size_t q) const;

  friend bool operator==(const ConversationTree& a, const ConversationTree& b) {
    return a.id_ == b.id_ && a.posts_ == b.posts_;
  }

 private:
  std::string id_;
  std::vector<Post> posts_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t root_ = 0;
};

struct Sentence {
  std::string text;
  Tensor embedding;
  QuarantinedLabel label;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Title {
  std::string text;
  Tensor embedding;

  friend bool operator==(const Title&, const Title&) = default;
};

struct Article {
  std::string id;
  Title title;
  std::vector<Sentence> sentences;
  std::vector<ConversationTree> trees;
  std::optional<ArticleLabel> label;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Provenance {
  std::string source;
  std::optional<std::uint64_t> seed;
  // Shared stance direction of generated corpora, used by the generator's
  // self-check oracle. Empty for ingested data.
  std::vector<double> stance_axis;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Corpus {
  std::vector<Article> articles;
  std::size_t dim = 0;
  Provenance provenance;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Checks every corpus invariant: n >= 1 sentences per article, non-empty
// trees, uniform embedding dimension. Throws CorpusError.
void ValidateCorpus(const Corpus& corpus);

// Splits into the first `head` articles and the rest.
std::pair<Corpus, Corpus> SplitCorpus(const Corpus& corpus, std::size_t head);

}  // namespace wsdms

#endif  // WSDMS_CORPUS_H_
