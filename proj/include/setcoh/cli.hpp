// Copyright 2026 The setcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands: setcoh, configs, game, decompose,
// validate. Results are "setcoh/1" JSON documents on stdout (or --output).

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace setcoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

// args[0] is the program name. Never throws; errors go to err and the exit
// code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setcoh::cli
