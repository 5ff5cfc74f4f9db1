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

// Checkpoint container:
//   8 bytes   magic "WSDMSCK1"
//   8 bytes   manifest length L, little-endian uint64
//   L bytes   JSON manifest: format version, config, tau, kernel bank,
//             optimizer step and the ordered list of {name, shape}
//   payload   for each listed parameter: value, first moment, second
//             moment, each as little-endian IEEE-754 doubles

#ifndef WSDMS_CHECKPOINT_H_
#define WSDMS_CHECKPOINT_H_

#include <string>

#include "wsdms/model.h"

namespace wsdms {

void SaveCheckpoint(const Model& model, const std::string& path);

// Throws Error on a truncated, mislabelled or inconsistent file.
Model LoadCheckpoint(const std::string& path);

}  // namespace wsdms

#endif  // WSDMS_CHECKPOINT_H_
