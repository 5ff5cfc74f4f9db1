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

#ifndef WSDMS_HASH_EMBED_H_
#define WSDMS_HASH_EMBED_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wsdms/tensor.h"

namespace wsdms {

// Lower-cased alphanumeric runs.
std::vector<std::string> Tokenize(std::string_view text);

// Signed feature hashing of the tokens of `text` into `dim` buckets (FNV-1a),
// L2-normalised. Deterministic across platforms. Throws ConfigError for
// dim < 2 and DegenerateInputError when the text has no tokens or the
// signed counts cancel to the zero vector.
Tensor HashEmbed(std::string_view text, std::size_t dim);

}  // namespace wsdms

#endif  // WSDMS_HASH_EMBED_H_
