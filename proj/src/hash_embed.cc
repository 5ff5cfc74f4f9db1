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

#include "wsdms/hash_embed.h"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "wsdms/errors.h"

namespace wsdms {
namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Tensor HashEmbed(std::string_view text, std::size_t dim) {
  if (dim < 2) throw ConfigError("hash embedding needs dim >= 2");
  const auto tokens = Tokenize(text);
  if (tokens.empty()) {
    throw DegenerateInputError("cannot embed text without tokens");
  }
  Tensor out({dim});
  for (const std::string& token : tokens) {
    const std::uint64_t h = Fnv1a(token);
    const double sign = (h >> 63) ? -1.0 : 1.0;
    out[h % dim] += sign;
  }
  const double norm = Norm(out.values());
  if (!(norm > 0.0)) {
    throw DegenerateInputError("hashed token counts cancel to zero");
  }
  for (double& v : out.values()) v /= norm;
  return out;
}

}  // namespace wsdms
