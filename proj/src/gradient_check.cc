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

#include "wsdms/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wsdms/errors.h"
#include "wsdms/random.h"

namespace wsdms {

GradientCheckResult FiniteDiffCheck(const LossFn& loss_fn,
                                    const ParamStore& params, double epsilon,
                                    const GradientCheckOptions& options) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-3)) {
    throw ConfigError("finite-difference epsilon must lie in [1e-7, 1e-3]");
  }
  Gradients analytic;
  const double base = loss_fn(params, &analytic);
  const double again = loss_fn(params, nullptr);
  if (base != again) {
    throw NondeterminismError("loss differs across identical evaluations");
  }

  GradientCheckResult result;
  Rng rng(options.seed);
  ParamStore probe = params;
  for (const std::string& name : params.Names()) {
    const std::size_t n = params.Get(name).size();
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), 0);
    if (n > options.max_coords_per_param) {
      rng.Shuffle(coords);
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    auto it = analytic.find(name);
    for (std::size_t i : coords) {
      double& slot = probe.Mutable(name)[i];
      const double original = slot;
      slot = original + epsilon;
      const double plus = loss_fn(probe, nullptr);
      slot = original - epsilon;
      const double minus = loss_fn(probe, nullptr);
      slot = original;

      const double numeric = (plus - minus) / (2.0 * epsilon);
      const double exact = it == analytic.end() ? 0.0 : it->second[i];
      const double scale =
          std::max({1.0, std::abs(exact), std::abs(numeric)});
      const double error = std::abs(exact - numeric) / scale;
      ++result.coords_checked;
      if (!(error <= result.max_relative_error)) {
        result.max_relative_error = error;
        result.worst_parameter = name;
        result.worst_index = i;
        result.worst_analytic = exact;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace wsdms
