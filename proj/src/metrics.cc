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

#include "wsdms/metrics.h"

namespace wsdms {

void Confusion::Add(bool predicted_positive, bool actually_positive) {
  if (predicted_positive) {
    ++(actually_positive ? tp : fp);
  } else {
    ++(actually_positive ? fn : tn);
  }
}

Metrics ComputeMetrics(const Confusion& c) {
  Metrics m;
  m.counts = c;
  const auto ratio = [](std::size_t num, std::size_t den, bool* undefined) {
    *undefined = den == 0;
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(c.tp, c.tp + c.fp, &m.precision_undefined);
  m.recall = ratio(c.tp, c.tp + c.fn, &m.recall_undefined);
  m.accuracy = ratio(c.tp + c.tn, c.total(), &m.accuracy_undefined);
  const double sum = m.precision + m.recall;
  m.f1 = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

}  // namespace wsdms
