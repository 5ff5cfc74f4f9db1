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

#include "wsdms/config.h"

#include "json.hpp"
#include "wsdms/errors.h"

namespace wsdms {

using nlohmann::json;

TrainConfig TrainConfig::DeskScale() {
  TrainConfig config;
  config.dim = 32;
  config.num_kernels = 10;
  config.max_epochs = 200;
  return config;
}

void TrainConfig::Validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0, 1]");
  }
  if (!(learning_rate >= 0.0)) throw ConfigError("learning rate must be >= 0");
  if (dim < 2) throw ConfigError("dimension must be >= 2");
  if (num_kernels < 1) throw ConfigError("need at least one kernel");
  if (propagation_rounds < 1) throw ConfigError("need at least one round");
  if (encoder_layers < 1) throw ConfigError("need at least one encoder layer");
  if (encoder_heads < 1 || dim % encoder_heads != 0) {
    throw ConfigError("encoder heads must divide the dimension");
  }
  if (convergence_patience < 1) throw ConfigError("patience must be >= 1");
}

const std::vector<std::string>& AblationNames() {
  static const std::vector<std::string> names = {
      "full_connect", "nll_loss",  "threshold_mil",
      "title_as_sentence", "no_kernel", "no_trees"};
  return names;
}

void ApplyAblation(TrainConfig& config, const std::string& name) {
  AblationFlags& f = config.ablation;
  if (name == "full_connect") {
    f.full_connect = true;
  } else if (name == "nll_loss") {
    f.nll_loss = true;
  } else if (name == "threshold_mil") {
    f.threshold_mil = true;
  } else if (name == "title_as_sentence") {
    f.title_as_sentence = true;
  } else if (name == "no_kernel") {
    f.no_kernel = true;
  } else if (name == "no_trees") {
    f.no_trees = true;
  } else {
    throw ConfigError("unknown ablation '" + name + "'");
  }
}

const char* TauModeName(TauMode mode) {
  switch (mode) {
    case TauMode::kRangeMidpoint: return "range-midpoint";
    case TauMode::kMedian: return "median";
    case TauMode::kOff: return "off";
  }
  return "?";
}

TauMode ParseTauMode(const std::string& text) {
  if (text == "range-midpoint") return TauMode::kRangeMidpoint;
  if (text == "median") return TauMode::kMedian;
  if (text == "off") return TauMode::kOff;
  throw ConfigError("unknown tau mode '" + text + "'");
}

const char* ConsistencyName(ConsistencyVariant variant) {
  return variant == ConsistencyVariant::kExponentProduct ? "product" : "weighted";
}

ConsistencyVariant ParseConsistency(const std::string& text) {
  if (text == "product") return ConsistencyVariant::kExponentProduct;
  if (text == "weighted") return ConsistencyVariant::kSimilarityWeighted;
  throw ConfigError("unknown consistency variant '" + text + "'");
}

const char* KernelReadingName(KernelReading reading) {
  return reading == KernelReading::kPerNeighbor ? "per-neighbor" : "node-logsum";
}

KernelReading ParseKernelReading(const std::string& text) {
  if (text == "per-neighbor") return KernelReading::kPerNeighbor;
  if (text == "node-logsum") return KernelReading::kNodeLogSum;
  throw ConfigError("unknown kernel reading '" + text + "'");
}

std::string ConfigToJson(const TrainConfig& c) {
  json ablation = {{"full_connect", c.ablation.full_connect},
                   {"threshold_mil", c.ablation.threshold_mil},
                   {"nll_loss", c.ablation.nll_loss},
                   {"title_as_sentence", c.ablation.title_as_sentence},
                   {"no_kernel", c.ablation.no_kernel},
                   {"no_trees", c.ablation.no_trees}};
  json j = {{"lambda", c.lambda},
            {"learning_rate", c.learning_rate},
            {"max_epochs", c.max_epochs},
            {"dim", c.dim},
            {"num_kernels", c.num_kernels},
            {"seed", c.seed},
            {"ablation", ablation},
            {"consistency", ConsistencyName(c.consistency)},
            {"tau_mode", TauModeName(c.tau_mode)},
            {"kernel_reading", KernelReadingName(c.kernel_reading)},
            {"propagation_rounds", c.propagation_rounds},
            {"batch_size", c.batch_size},
            {"encoder_layers", c.encoder_layers},
            {"encoder_heads", c.encoder_heads},
            {"ffn_width", c.ffn_width},
            {"convergence_tolerance", c.convergence_tolerance},
            {"convergence_patience", c.convergence_patience}};
  return j.dump();
}

namespace {

template <typename T>
void ReadIfPresent(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

TrainConfig ConfigFromJson(const std::string& text) {
  TrainConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config JSON must be an object");
    static const char* const kKnown[] = {
        "lambda", "learning_rate", "max_epochs", "dim", "num_kernels", "seed",
        "ablation", "consistency", "tau_mode", "kernel_reading",
        "propagation_rounds", "batch_size", "encoder_layers", "encoder_heads",
        "ffn_width", "convergence_tolerance", "convergence_patience"};
    for (const auto& item : j.items()) {
      bool known = false;
      for (const char* k : kKnown) known = known || item.key() == k;
      if (!known) throw ConfigError("unknown config key '" + item.key() + "'");
    }
    ReadIfPresent(j, "lambda", c.lambda);
    ReadIfPresent(j, "learning_rate", c.learning_rate);
    ReadIfPresent(j, "max_epochs", c.max_epochs);
    ReadIfPresent(j, "dim", c.dim);
    ReadIfPresent(j, "num_kernels", c.num_kernels);
    ReadIfPresent(j, "seed", c.seed);
    if (j.contains("ablation")) {
      const json& a = j.at("ablation");
      for (const auto& item : a.items()) {
        if (item.value().get<bool>()) ApplyAblation(c, item.key());
      }
    }
    if (j.contains("consistency")) {
      c.consistency = ParseConsistency(j.at("consistency").get<std::string>());
    }
    if (j.contains("tau_mode")) c.tau_mode = ParseTauMode(j.at("tau_mode").get<std::string>());
    if (j.contains("kernel_reading")) {
      c.kernel_reading = ParseKernelReading(j.at("kernel_reading").get<std::string>());
    }
    ReadIfPresent(j, "propagation_rounds", c.propagation_rounds);
    ReadIfPresent(j, "batch_size", c.batch_size);
    ReadIfPresent(j, "encoder_layers", c.encoder_layers);
    ReadIfPresent(j, "encoder_heads", c.encoder_heads);
    ReadIfPresent(j, "ffn_width", c.ffn_width);
    ReadIfPresent(j, "convergence_tolerance", c.convergence_tolerance);
    ReadIfPresent(j, "convergence_patience", c.convergence_patience);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  c.Validate();
  return c;
}

}  // namespace wsdms
