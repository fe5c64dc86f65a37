// tools/hasr_main.cc

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

#include <iostream>

#include "CLI11.hpp"
#include "commands/common.h"
#include "hasr/common/errors.h"

namespace hasr::tools {

void RejectUnusedKeys(const KvConfig& kv) {
  const auto unused = kv.UnusedKeys();
  if (unused.empty()) return;
  std::string list;
  for (const auto& k : unused) list += (list.empty() ? "" : ", ") + k;
  throw ConfigError(kv.origin() + ": unknown keys: " + list);
}

}  // namespace hasr::tools

int main(int argc, char** argv) {
  CLI::App app{"hasr: hybrid DNN-HMM acoustic and language modelling toolkit"};
  app.require_subcommand(1);
  hasr::tools::AddAmCommands(app);
  hasr::tools::AddLmCommands(app);
  hasr::tools::AddExperimentCommand(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const hasr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
