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

#include "wsdms/param_store.h"

#include <cmath>

#include "wsdms/errors.h"

namespace wsdms {

void Accumulate(Gradients& into, const Gradients& other, double scale) {
  for (const auto& [name, grad] : other) {
    auto it = into.find(name);
    if (it == into.end()) {
      Tensor scaled = grad;
      for (double& v : scaled.values()) v *= scale;
      into.emplace(name, std::move(scaled));
      continue;
    }
    if (!it->second.SameShape(grad)) {
      throw ShapeError("gradient '" + name + "' shape mismatch");
    }
    auto dst = it->second.values();
    auto src = grad.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
  }
}

void ParamStore::Add(const std::string& name, Tensor value) {
  if (entries_.count(name)) {
    throw ConfigError("parameter '" + name + "' registered twice");
  }
  Entry entry;
  entry.first_moment = Tensor(value.shape());
  entry.second_moment = Tensor(value.shape());
  entry.value = std::move(value);
  entry.value.set_requires_grad(true);
  entries_.emplace(name, std::move(entry));
}

const ParamStore::Entry& ParamStore::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw ConfigError("unknown parameter '" + name + "'");
  }
  return it->second;
}

ParamStore::Entry& ParamStore::mutable_entry(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw ConfigError("unknown parameter '" + name + "'");
  }
  return it->second;
}

const Tensor& ParamStore::Get(const std::string& name) const {
  return entry(name).value;
}

Tensor& ParamStore::Mutable(const std::string& name) {
  return mutable_entry(name).value;
}

std::vector<std::string> ParamStore::Names() const {
  std::vector<std::string> names;
  names.reserve(entries_.size());
  for (const auto& [name, entry] : entries_) names.push_back(name);
  return names;
}

std::size_t ParamStore::NumScalars() const {
  std::size_t n = 0;
  for (const auto& [name, entry] : entries_) n += entry.value.size();
  return n;
}

void AdamStep(ParamStore& params, const Gradients& grads, double lr,
              const AdamOptions& options) {
  for (const auto& [name, grad] : grads) {
    if (!params.Contains(name)) {
      throw ConfigError("gradient for unknown parameter '" + name + "'");
    }
    if (!params.Get(name).SameShape(grad)) {
      throw ShapeError("gradient '" + name + "' has shape " +
                       grad.ShapeString() + ", parameter has " +
                       params.Get(name).ShapeString());
    }
  }
  const std::int64_t t = params.step_ + 1;
  const double correction1 = 1.0 - std::pow(options.beta1, t);
  const double correction2 = 1.0 - std::pow(options.beta2, t);
  for (auto& [name, entry] : params.entries_) {
    auto it = grads.find(name);
    const Tensor* grad = it == grads.end() ? nullptr : &it->second;
    auto value = entry.value.values();
    auto m = entry.first_moment.values();
    auto v = entry.second_moment.values();
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad ? (*grad)[i] : 0.0;
      m[i] = options.beta1 * m[i] + (1.0 - options.beta1) * g;
      v[i] = options.beta2 * v[i] + (1.0 - options.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      value[i] -= lr * m_hat / (std::sqrt(v_hat) + options.epsilon);
    }
  }
  params.step_ = t;
}

}  // namespace wsdms
