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

#include "wsdms/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "wsdms/errors.h"
#include "wsdms/hash_embed.h"

namespace wsdms {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

[[noreturn]] void Malformed(std::size_t line, const std::string& what) {
  throw CorpusError(CorpusErrorKind::kMalformed, line, what);
}

const json& Field(const json& obj, const char* key, std::size_t line,
                  const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) Malformed(line, where + " lacks field '" + key + "'");
  return *it;
}

std::string StringField(const json& obj, const char* key, std::size_t line,
                        const std::string& where) {
  const json& v = Field(obj, key, line, where);
  if (!v.is_string()) Malformed(line, where + " field '" + key + "' is not a string");
  return v.get<std::string>();
}

std::string OptionalText(const json& obj, std::size_t line,
                         const std::string& where) {
  auto it = obj.find("text");
  if (it == obj.end()) return {};
  if (!it->is_string()) Malformed(line, where + " field 'text' is not a string");
  return it->get<std::string>();
}

const json& ArrayField(const json& obj, const char* key, std::size_t line,
                       const std::string& where) {
  const json& v = Field(obj, key, line, where);
  if (!v.is_array()) Malformed(line, where + " field '" + key + "' is not an array");
  return v;
}

// Explicit embedding if present, else a hash embedding of the text.
Tensor ReadEmbedding(const json& obj, const std::string& text, std::size_t dim,
                     std::size_t line, const std::string& where) {
  auto it = obj.find("embedding");
  if (it != obj.end()) {
    if (!it->is_array()) Malformed(line, where + " embedding is not an array");
    std::vector<double> values;
    values.reserve(it->size());
    for (const json& x : *it) {
      if (!x.is_number()) Malformed(line, where + " embedding has a non-number");
      values.push_back(x.get<double>());
    }
    if (values.size() != dim) {
      throw CorpusError(CorpusErrorKind::kDimensionMismatch, line,
                        where + " has embedding of size " +
                            std::to_string(values.size()) + ", expected " +
                            std::to_string(dim));
    }
    return Tensor::Vector(std::move(values));
  }
  if (text.empty()) {
    throw CorpusError(CorpusErrorKind::kMissingEmbedding, line,
                      where + " has neither text nor embedding");
  }
  try {
    return HashEmbed(text, dim);
  } catch (const Error& e) {
    throw CorpusError(CorpusErrorKind::kMissingEmbedding, line,
                      where + ": " + e.what());
  }
}

// First explicit embedding length found anywhere in a record.
std::optional<std::size_t> FindEmbeddingSize(const json& j) {
  if (j.is_object()) {
    auto it = j.find("embedding");
    if (it != j.end() && it->is_array()) return it->size();
    for (const auto& [key, value] : j.items()) {
      if (auto n = FindEmbeddingSize(value)) return n;
    }
  } else if (j.is_array()) {
    for (const json& v : j) {
      if (auto n = FindEmbeddingSize(v)) return n;
    }
  }
  return std::nullopt;
}

Article ParseArticle(const json& j, std::size_t dim, std::size_t line) {
  if (!j.is_object()) Malformed(line, "record is not an object");
  Article article;
  article.id = StringField(j, "id", line, "article");
  const std::string where = "article '" + article.id + "'";

  const json& title = Field(j, "title", line, where);
  if (!title.is_object()) Malformed(line, where + " title is not an object");
  article.title.text = OptionalText(title, line, where + " title");
  article.title.embedding =
      ReadEmbedding(title, article.title.text, dim, line, where + " title");

  const json& sentences = ArrayField(j, "sentences", line, where);
  if (sentences.empty()) {
    throw CorpusError(CorpusErrorKind::kEmpty, line, where + " has no sentences");
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const json& s = sentences[i];
    const std::string swhere = where + " sentence " + std::to_string(i);
    if (!s.is_object()) Malformed(line, swhere + " is not an object");
    Sentence sentence;
    sentence.text = OptionalText(s, line, swhere);
    sentence.embedding = ReadEmbedding(s, sentence.text, dim, line, swhere);
    if (auto it = s.find("label"); it != s.end() && !it->is_null()) {
      auto parsed = it->is_string() ? ParseSentenceLabel(it->get<std::string>())
                                    : std::nullopt;
      if (!parsed) Malformed(line, swhere + " has an unknown label");
      sentence.label = QuarantinedLabel(*parsed);
    }
    article.sentences.push_back(std::move(sentence));
  }

  auto trees_it = j.find("trees");
  if (trees_it != j.end()) {
    if (!trees_it->is_array()) Malformed(line, where + " trees is not an array");
    for (const json& t : *trees_it) {
      if (!t.is_object()) Malformed(line, where + " tree is not an object");
      const std::string tree_id = StringField(t, "id", line, where + " tree");
      const std::string twhere = "tree '" + tree_id + "'";
      std::vector<Post> posts;
      for (const json& p : ArrayField(t, "posts", line, twhere)) {
        if (!p.is_object()) Malformed(line, twhere + " post is not an object");
        Post post;
        post.id = StringField(p, "id", line, twhere + " post");
        if (auto it = p.find("parent"); it != p.end() && !it->is_null()) {
          if (!it->is_string()) Malformed(line, "post '" + post.id + "' parent is not a string");
          post.parent = it->get<std::string>();
        }
        post.text = OptionalText(p, line, "post '" + post.id + "'");
        post.embedding =
            ReadEmbedding(p, post.text, dim, line, "post '" + post.id + "'");
        posts.push_back(std::move(post));
      }
      try {
        article.trees.emplace_back(tree_id, std::move(posts));
      } catch (const CorpusError& e) {
        throw e.AtLine(line);
      }
    }
  }

  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    auto parsed =
        it->is_string() ? ParseArticleLabel(it->get<std::string>()) : std::nullopt;
    if (!parsed) Malformed(line, where + " has an unknown label");
    article.label = *parsed;
  }
  return article;
}

json EmbeddingJson(const Tensor& t) {
  return json(std::vector<double>(t.values().begin(), t.values().end()));
}

json ArticleJson(const Article& a) {
  json j;
  j["id"] = a.id;
  json title = {{"text", a.title.text}};
  title["embedding"] = EmbeddingJson(a.title.embedding);
  j["title"] = std::move(title);
  json sentences = json::array();
  for (const Sentence& s : a.sentences) {
    json sj = {{"text", s.text}};
    sj["embedding"] = EmbeddingJson(s.embedding);
    if (s.label.present()) sj["label"] = SentenceLabelName(s.label.Reveal());
    sentences.push_back(std::move(sj));
  }
  j["sentences"] = std::move(sentences);
  json trees = json::array();
  for (const ConversationTree& t : a.trees) {
    json posts = json::array();
    for (const Post& p : t.posts()) {
      json pj = {{"id", p.id}};
      if (p.parent) pj["parent"] = *p.parent;
      pj["text"] = p.text;
      pj["embedding"] = EmbeddingJson(p.embedding);
      posts.push_back(std::move(pj));
    }
    trees.push_back({{"id", t.id()}, {"posts", std::move(posts)}});
  }
  j["trees"] = std::move(trees);
  if (a.label) j["label"] = ArticleLabelName(*a.label);
  return j;
}

std::optional<Corpus> ReadSidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw CorpusError(CorpusErrorKind::kMalformed, 0,
                      "sidecar " + path.string() + ": " + e.what());
  }
  Corpus meta;
  try {
    if (j.value("format", std::string()) != "wsdms-corpus") {
      throw CorpusError(CorpusErrorKind::kMalformed, 0,
                        "sidecar " + path.string() + " has an unknown format");
    }
    if (j.value("version", 0) != kFormatVersion) {
      throw CorpusError(CorpusErrorKind::kMalformed, 0,
                        "sidecar " + path.string() + " has an unsupported version");
    }
    meta.dim = j.at("dim").get<std::size_t>();
    meta.provenance.source = j.value("source", std::string());
    if (j.contains("seed") && !j["seed"].is_null()) {
      meta.provenance.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("stance_axis")) {
      meta.provenance.stance_axis = j["stance_axis"].get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw CorpusError(CorpusErrorKind::kMalformed, 0,
                      "sidecar " + path.string() + ": " + e.what());
  }
  return meta;
}

}  // namespace

std::filesystem::path SidecarPath(const std::filesystem::path& corpus_path) {
  return std::filesystem::path(corpus_path.string() + ".meta.json");
}

Corpus ParseCorpus(std::istream& in, const LoadOptions& options,
                   const std::optional<Corpus>& declared,
                   const std::string& source_name) {
  std::vector<std::pair<std::size_t, json>> records;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.emplace_back(line, json::parse(text));
    } catch (const json::exception& e) {
      Malformed(line, std::string("invalid JSON: ") + e.what());
    }
  }

  Corpus corpus;
  if (declared) corpus.provenance = declared->provenance;
  if (corpus.provenance.source.empty()) corpus.provenance.source = source_name;
  if (declared) {
    corpus.dim = declared->dim;
  } else if (options.fallback_dim) {
    corpus.dim = *options.fallback_dim;
  } else {
    for (const auto& [l, j] : records) {
      if (auto n = FindEmbeddingSize(j)) {
        corpus.dim = *n;
        break;
      }
    }
  }
  if (corpus.dim == 0) {
    throw CorpusError(CorpusErrorKind::kMissingEmbedding, 0,
                      "cannot determine the embedding dimension of " +
                          source_name + "; supply one for hash embedding");
  }
  // Text-only records are hash-embedded at the declared width; a fallback
  // that disagrees with the sidecar is rejected up front.
  if (declared && options.fallback_dim && *options.fallback_dim != declared->dim) {
    throw CorpusError(CorpusErrorKind::kDimensionMismatch, 0,
                      "requested dimension " +
                          std::to_string(*options.fallback_dim) +
                          " differs from sidecar dimension " +
                          std::to_string(declared->dim));
  }

  for (const auto& [l, j] : records) {
    corpus.articles.push_back(ParseArticle(j, corpus.dim, l));
  }
  ValidateCorpus(corpus);
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw CorpusError(CorpusErrorKind::kIo, 0, "cannot open " + path.string());
  }
  return ParseCorpus(in, options, ReadSidecar(SidecarPath(path)), path.string());
}

void WriteCorpusLines(const Corpus& corpus, std::ostream& out) {
  for (const Article& a : corpus.articles) out << ArticleJson(a).dump() << '\n';
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  ValidateCorpus(corpus);
  {
    std::ofstream out(path);
    if (!out) throw CorpusError(CorpusErrorKind::kIo, 0, "cannot write " + path.string());
    WriteCorpusLines(corpus, out);
  }
  json meta = {{"format", "wsdms-corpus"},
               {"version", kFormatVersion},
               {"dim", corpus.dim},
               {"source", corpus.provenance.source}};
  if (corpus.provenance.seed) meta["seed"] = *corpus.provenance.seed;
  if (!corpus.provenance.stance_axis.empty()) {
    meta["stance_axis"] = corpus.provenance.stance_axis;
  }
  std::ofstream out(SidecarPath(path));
  if (!out) {
    throw CorpusError(CorpusErrorKind::kIo, 0,
                      "cannot write " + SidecarPath(path).string());
  }
  out << meta.dump(2) << '\n';
}

}  // namespace wsdms
