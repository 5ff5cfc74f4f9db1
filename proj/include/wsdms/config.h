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

#ifndef WSDMS_CONFIG_H_
#define WSDMS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wsdms {

// How the global linking threshold is derived from the corpus-wide
// sentence/tree similarity scores.
enum class TauMode {
  kRangeMidpoint,  // (min + max) / 2
  kMedian,         // statistical median
  kOff,            // no threshold: every pair links
};

enum class ConsistencyVariant {
  // (1/n^2) sum_ij exp(-|s_i - s_j|^2 * |p_i - p_j|^2)
  kExponentProduct,
  // (1/n^2) sum_ij exp(-|s_i - s_j|^2) * |p_i - p_j|^2
  kSimilarityWeighted,
};

// Reading of the kernel scorer that turns translation-matrix entries into
// neighbour attention logits.
enum class KernelReading {
  // K activations per edge entry M[p][q], scored by a K -> 1 map.
  kPerNeighbor,
  // Node feature log sum_q phi_k(M[q][.]) of the neighbour, scored by the
  // same K -> 1 map.
  kNodeLogSum,
};

struct AblationFlags {
  bool full_connect = false;       // link every sentence to every tree
  bool threshold_mil = false;      // bag positive iff one instance > 0.5
  bool nll_loss = false;           // negative log-likelihood objective
  bool title_as_sentence = false;  // title joins the instance set
  bool no_kernel = false;          // dot-product post attention
  bool no_trees = false;           // zero social context

  friend bool operator==(const AblationFlags&, const AblationFlags&) = default;
};

struct TrainConfig {
  double lambda = 0.5;
  double learning_rate = 0.001;
  std::size_t max_epochs = 100;
  std::size_t dim = 512;
  std::size_t num_kernels = 10;
  std::uint64_t seed = 0;
  AblationFlags ablation;
  ConsistencyVariant consistency = ConsistencyVariant::kExponentProduct;
  TauMode tau_mode = TauMode::kRangeMidpoint;
  KernelReading kernel_reading = KernelReading::kPerNeighbor;
  std::size_t propagation_rounds = 1;
  // 0 selects full-batch descent.
  std::size_t batch_size = 0;
  std::size_t encoder_layers = 1;
  std::size_t encoder_heads = 1;
  // Feed-forward width of the sentence encoder; 0 means dim.
  std::size_t ffn_width = 0;
  double convergence_tolerance = 1e-6;
  std::size_t convergence_patience = 5;

  // d = 32, K = 10, 200 epochs.
  static TrainConfig DeskScale();

  // Throws ConfigError.
  void Validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Ablation switch names accepted by ApplyAblation, in reporting order.
const std::vector<std::string>& AblationNames();
// Sets the named flag. Throws ConfigError for an unknown name.
void ApplyAblation(TrainConfig& config, const std::string& name);

const char* TauModeName(TauMode mode);
TauMode ParseTauMode(const std::string& text);
const char* ConsistencyName(ConsistencyVariant variant);
ConsistencyVariant ParseConsistency(const std::string& text);
const char* KernelReadingName(KernelReading reading);
KernelReading ParseKernelReading(const std::string& text);

std::string ConfigToJson(const TrainConfig& config);
// Keys absent from `text` keep their defaults; unknown keys are rejected.
TrainConfig ConfigFromJson(const std::string& text);

}  // namespace wsdms

#endif  // WSDMS_CONFIG_H_
