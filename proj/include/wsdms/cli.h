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

#ifndef WSDMS_CLI_H_
#define WSDMS_CLI_H_

#include <ostream>

namespace wsdms {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCorpus = 3;

inline constexpr const char* kVersion = "1.0.0";

// Runs one of the train, eval, predict, gen-synth, entropy-report and
// ablate subcommands. Every command writes manifest.json into its --out
// directory. Errors produce a single "error: ..." line on `err`.
int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace wsdms

#endif  // WSDMS_CLI_H_
