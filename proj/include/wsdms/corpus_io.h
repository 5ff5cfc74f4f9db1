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

// Corpus files are JSON Lines, one article per line:
//
//   {"id": "a1",
//    "title": {"text": "...", "embedding": [..]},
//    "sentences": [{"text": "...", "embedding": [..], "label": "clean"}],
//    "trees": [{"id": "t1",
//               "posts": [{"id": "p1", "text": "...", "embedding": [..]},
//                         {"id": "p2", "parent": "p1", "text": "..."}]}],
//    "label": "fake"}
//
// Embeddings are optional wherever text is present; missing ones are filled
// with HashEmbed at load time. Sentence labels ("misinforming" / "clean")
// are optional. A sidecar "<file>.meta.json" declares the dimension and
// provenance:
//
//   {"format": "wsdms-corpus", "version": 1, "dim": 32,
//    "source": "synthetic", "seed": 7, "stance_axis": [..]}

#ifndef WSDMS_CORPUS_IO_H_
#define WSDMS_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wsdms/corpus.h"

namespace wsdms {

struct LoadOptions {
  // Dimension used for hash-embedding records without embeddings. When
  // unset, the sidecar dimension is used; when neither is available the
  // dimension is taken from the first explicit embedding.
  std::optional<std::size_t> fallback_dim;
};

std::filesystem::path SidecarPath(const std::filesystem::path& corpus_path);

// Reads the corpus and its sidecar (if present) and validates every
// invariant. Throws CorpusError naming the offending line.
Corpus LoadCorpus(const std::filesystem::path& path,
                  const LoadOptions& options = {});

// Parses JSON Lines from a stream. `declared` is the sidecar provenance and
// dimension, if any.
Corpus ParseCorpus(std::istream& in, const LoadOptions& options,
                   const std::optional<Corpus>& declared = std::nullopt,
                   const std::string& source_name = "<stream>");

// Writes the corpus and its sidecar. Doubles are printed with round-trip
// precision so LoadCorpus(WriteCorpus(c)) == c.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);
void WriteCorpusLines(const Corpus& corpus, std::ostream& out);

}  // namespace wsdms

#endif  // WSDMS_CORPUS_IO_H_
