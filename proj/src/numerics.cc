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

#include "wsdms/numerics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsdms/errors.h"
#include "wsdms/tensor.h"

namespace wsdms {

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ShapeError("cosine similarity of lengths " +
                     std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  const double na = Norm(a);
  const double nb = Norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw DegenerateInputError("cosine similarity of a zero-norm vector");
  }
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

std::vector<double> Softmax(std::span<const double> x) {
  if (x.empty()) throw DegenerateInputError("softmax of an empty vector");
  double max = -INFINITY;
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw DegenerateInputError("softmax input is not finite");
    }
    max = std::max(max, v);
  }
  std::vector<double> out(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - max);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

KernelBank KernelBank::Default(std::size_t num_kernels) {
  if (num_kernels == 0) throw ConfigError("kernel bank needs K >= 1");
  KernelBank bank;
  bank.means.push_back(1.0);
  bank.widths.push_back(0.001);
  const std::size_t rest = num_kernels - 1;
  for (std::size_t k = 0; k < rest; ++k) {
    const double mu =
        rest == 1 ? 0.0
                  : -1.0 + 2.0 * static_cast<double>(k) /
                               static_cast<double>(rest - 1);
    bank.means.push_back(mu);
    bank.widths.push_back(0.01);
  }
  return bank;
}

KernelBank KernelBank::WithWidth(double width) const {
  KernelBank out = *this;
  std::fill(out.widths.begin(), out.widths.end(), width);
  return out;
}

void KernelBank::Validate() const {
  if (means.empty() || means.size() != widths.size()) {
    throw ConfigError("kernel bank needs matching, non-empty means and widths");
  }
  for (double w : widths) {
    if (!(w > 0.0)) throw ConfigError("kernel width must be positive");
  }
}

std::vector<double> GaussianKernelVector(double m, const KernelBank& bank) {
  if (!std::isfinite(m)) {
    throw DegenerateInputError("kernel input is not finite");
  }
  std::vector<double> out(bank.size());
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const double diff = m - bank.means[k];
    out[k] = std::exp(-diff * diff / (2.0 * bank.widths[k] * bank.widths[k]));
  }
  return out;
}

}  // namespace wsdms
