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

#ifndef WSDMS_GRADIENT_CHECK_H_
#define WSDMS_GRADIENT_CHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "wsdms/param_store.h"

namespace wsdms {

// Evaluates a scalar loss at `params`. When `grads` is non-null the
// analytic gradient is written there as well.
using LossFn = std::function<double(const ParamStore& params, Gradients* grads)>;

struct GradientCheckOptions {
  // Coordinates probed per parameter tensor; tensors with fewer coordinates
  // are probed exhaustively.
  std::size_t max_coords_per_param = 64;
  std::uint64_t seed = 0;
};

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coords_checked = 0;
};

// Compares analytic gradients against central differences. The relative
// error of a coordinate is |analytic - numeric| / max(1, |analytic|,
// |numeric|). Throws ConfigError when epsilon lies outside [1e-7, 1e-3]
// and NondeterminismError when two evaluations at the same point differ.
GradientCheckResult FiniteDiffCheck(const LossFn& loss_fn,
                                    const ParamStore& params, double epsilon,
                                    const GradientCheckOptions& options = {});

}  // namespace wsdms

#endif  // WSDMS_GRADIENT_CHECK_H_
