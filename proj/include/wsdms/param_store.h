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

#ifndef WSDMS_PARAM_STORE_H_
#define WSDMS_PARAM_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wsdms/tensor.h"

namespace wsdms {

// Gradient of a scalar loss, keyed by parameter name.
using Gradients = std::map<std::string, Tensor>;

// Adds `other` into `into`, creating missing entries.
void Accumulate(Gradients& into, const Gradients& other, double scale = 1.0);

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Named trainable tensors with their Adam moments. Iteration order is the
// lexicographic name order, which keeps every traversal deterministic.
class ParamStore {
 public:
  struct Entry {
    Tensor value;
    Tensor first_moment;
    Tensor second_moment;
  };

  // Registers a parameter with zeroed moments. Re-adding a name throws.
  void Add(const std::string& name, Tensor value);

  bool Contains(const std::string& name) const {
    return entries_.count(name) > 0;
  }
  const Tensor& Get(const std::string& name) const;
  Tensor& Mutable(const std::string& name);
  const Entry& entry(const std::string& name) const;
  Entry& mutable_entry(const std::string& name);

  std::vector<std::string> Names() const;
  std::size_t NumScalars() const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::int64_t step() const { return step_; }
  void set_step(std::int64_t step) { step_ = step; }

 private:
  friend void AdamStep(ParamStore&, const Gradients&, double,
                       const AdamOptions&);

  std::map<std::string, Entry> entries_;
  std::int64_t step_ = 0;
};

// One bias-corrected Adam update. Parameters absent from `grads` are treated
// as having zero gradient. Throws ShapeError on a shape mismatch and
// ConfigError for an unknown gradient name.
void AdamStep(ParamStore& params, const Gradients& grads, double lr,
              const AdamOptions& options = {});

}  // namespace wsdms

#endif  // WSDMS_PARAM_STORE_H_
