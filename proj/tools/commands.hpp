// Copyright 2026 The walkcover Authors
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

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"

namespace walkcover::cli {

struct CommonOptions {
  std::string out;
  std::string record;
  std::string format = "json";
  unsigned threads = 0;
};

struct CommandResult {
  Json results;
  std::optional<std::string> csv;  // tabular commands only
  std::optional<std::uint64_t> seed;
  int exit_code = 0;
};

struct Command {
  CLI::App* app = nullptr;
  std::shared_ptr<CommonOptions> common;
  bool tabular = false;
  std::function<CommandResult()> execute;
};

// Registers every subcommand on `app`.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace walkcover::cli
