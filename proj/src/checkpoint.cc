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

#include "wsdms/checkpoint.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "wsdms/errors.h"

namespace wsdms {
namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'W', 'S', 'D', 'M', 'S', 'C', 'K', '1'};
constexpr int kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void WriteDoubles(std::ostream& out, const Tensor& t) {
  out.write(reinterpret_cast<const char*>(t.storage().data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
}

void ReadDoubles(std::istream& in, Tensor& t) {
  in.read(reinterpret_cast<char*>(t.storage().data()),
          static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!in) throw Error("checkpoint payload is truncated");
}

}  // namespace

void SaveCheckpoint(const Model& model, const std::string& path) {
  json params = json::array();
  for (const auto& [name, entry] : model.params.entries()) {
    params.push_back({{"name", name}, {"shape", entry.value.shape()}});
  }
  json manifest = {
      {"format", "wsdms-checkpoint"},
      {"version", kFormatVersion},
      {"config", json::parse(ConfigToJson(model.config))},
      // JSON has no infinities; null stands for "link everything".
      {"tau", std::isfinite(model.tau) ? json(model.tau) : json(nullptr)},
      {"kernel_means", model.bank.means},
      {"kernel_widths", model.bank.widths},
      {"step", model.params.step()},
      {"params", params}};
  const std::string text = manifest.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write checkpoint '" + path + "'");
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t length = text.size();
  out.write(reinterpret_cast<const char*>(&length), sizeof(length));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& [name, entry] : model.params.entries()) {
    WriteDoubles(out, entry.value);
    WriteDoubles(out, entry.first_moment);
    WriteDoubles(out, entry.second_moment);
  }
  if (!out) throw Error("failed while writing checkpoint '" + path + "'");
}

Model LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path + "'");
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("'" + path + "' is not a checkpoint");
  }
  std::uint64_t length = 0;
  in.read(reinterpret_cast<char*>(&length), sizeof(length));
  if (!in || length > (1u << 30)) throw Error("checkpoint manifest is corrupt");
  std::string text(length, '\0');
  in.read(text.data(), static_cast<std::streamsize>(length));
  if (!in) throw Error("checkpoint manifest is truncated");

  Model model;
  try {
    const json manifest = json::parse(text);
    if (manifest.at("format") != "wsdms-checkpoint" ||
        manifest.at("version").get<int>() != kFormatVersion) {
      throw Error("unsupported checkpoint format");
    }
    model.config = ConfigFromJson(manifest.at("config").dump());
    const json& tau = manifest.at("tau");
    model.tau = tau.is_null() ? -std::numeric_limits<double>::infinity()
                              : tau.get<double>();
    model.bank.means = manifest.at("kernel_means").get<std::vector<double>>();
    model.bank.widths = manifest.at("kernel_widths").get<std::vector<double>>();
    model.bank.Validate();
    for (const json& p : manifest.at("params")) {
      const auto shape = p.at("shape").get<std::vector<std::size_t>>();
      ParamStore::Entry entry;
      entry.value = Tensor(shape);
      entry.first_moment = Tensor(shape);
      entry.second_moment = Tensor(shape);
      ReadDoubles(in, entry.value);
      ReadDoubles(in, entry.first_moment);
      ReadDoubles(in, entry.second_moment);
      const std::string name = p.at("name").get<std::string>();
      model.params.Add(name, entry.value);
      model.params.mutable_entry(name) = std::move(entry);
    }
    model.params.set_step(manifest.at("step").get<std::int64_t>());
  } catch (const json::exception& e) {
    throw Error(std::string("checkpoint manifest is malformed: ") + e.what());
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error("checkpoint has trailing bytes");
  }
  return model;
}

}  // namespace wsdms
