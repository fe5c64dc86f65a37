// tools/commands/common.h

// Copyright 2026 The hybridasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HASR_TOOLS_COMMANDS_COMMON_H_
#define HASR_TOOLS_COMMANDS_COMMON_H_

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hasr/common/kv_config.h"

namespace hasr::tools {

// Environment variable that, when set, replaces the output directory of
// every command that writes a directory.
inline constexpr const char* kOutputDirEnv = "HASR_OUTPUT_DIR";

inline std::string ResolveOutputDir(const std::string& configured) {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return configured;
}

// Fails on keys that no command consumed, so typos surface immediately.
void RejectUnusedKeys(const KvConfig& kv);

void AddAmCommands(CLI::App& app);
void AddLmCommands(CLI::App& app);
void AddExperimentCommand(CLI::App& app);

}  // namespace hasr::tools

#endif  // HASR_TOOLS_COMMANDS_COMMON_H_
