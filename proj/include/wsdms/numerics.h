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

#ifndef WSDMS_NUMERICS_H_
#define WSDMS_NUMERICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace wsdms {

// a.b / (|a||b|). Throws DegenerateInputError on a zero-norm input and
// ShapeError on a length mismatch.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

// Max-subtracted softmax. Throws DegenerateInputError when `x` is empty or
// holds a non-finite entry.
std::vector<double> Softmax(std::span<const double> x);

// Bank of fixed Gaussian kernels phi_k(m) = exp(-(m - mu_k)^2 / (2 sigma_k^2)).
struct KernelBank {
  std::vector<double> means;
  std::vector<double> widths;

  std::size_t size() const { return means.size(); }

  // K kernels: one exact-match kernel (mu = 1, sigma = 0.001) followed by
  // K - 1 kernels of width 0.01 whose means are spread evenly over [-1, 1].
  // K = 1 yields the exact-match kernel alone.
  static KernelBank Default(std::size_t num_kernels);

  // Every kernel widened to `width`.
  KernelBank WithWidth(double width) const;

  void Validate() const;
};

// One activation per kernel for a single translation-matrix entry.
std::vector<double> GaussianKernelVector(double m, const KernelBank& bank);

}  // namespace wsdms

#endif  // WSDMS_NUMERICS_H_
