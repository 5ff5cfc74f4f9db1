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

#ifndef WSDMS_METRICS_H_
#define WSDMS_METRICS_H_

#include <cstddef>

namespace wsdms {

// Binary confusion counts; the positive class is fake / misinforming.
struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  void Add(bool predicted_positive, bool actually_positive);
  std::size_t total() const { return tp + fp + fn + tn; }
};

// Ratios with a zero denominator are reported as 0 and flagged.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool accuracy_undefined = false;
  Confusion counts;
};

Metrics ComputeMetrics(const Confusion& counts);

}  // namespace wsdms

#endif  // WSDMS_METRICS_H_
