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

#ifndef WSDMS_ERRORS_H_
#define WSDMS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsdms {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero-norm vectors, empty softmax inputs, non-finite values.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised by the gradient oracle when the loss is not a pure function of the
// parameters.
class NondeterminismError : public Error {
 public:
  using Error::Error;
};

enum class CorpusErrorKind {
  kIo,
  kMalformed,
  kDimensionMismatch,
  kDanglingParent,
  kCyclicTree,
  kRootCount,
  kDuplicateId,
  kMissingEmbedding,
  kMissingLabel,
  kEmpty,
};

const char* CorpusErrorKindName(CorpusErrorKind kind);

// Corpus validation failure. `line` is 1-based; 0 when the failure is not
// tied to a specific record.
class CorpusError : public Error {
 public:
  CorpusError(CorpusErrorKind kind, std::size_t line, const std::string& what);

  CorpusErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  // Message without the kind and line prefix.
  const std::string& detail() const { return detail_; }

  // Same error re-anchored at `line`.
  CorpusError AtLine(std::size_t line) const {
    return CorpusError(kind_, line, detail_);
  }

 private:
  CorpusErrorKind kind_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace wsdms

#endif  // WSDMS_ERRORS_H_
