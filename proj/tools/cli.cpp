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

#include "cli.hpp"

#include <chrono>
#include <sstream>

#include "commands.hpp"
#include "walkcover/errors.hpp"

#ifndef WALKCOVER_VERSION
#define WALKCOVER_VERSION "0.0.0"
#endif

namespace walkcover::cli {

namespace {

Json option_values(const CLI::App& app) {
  Json params = Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        params[name] = true;
      } else if (res.size() == 1) {
        params[name] = res.front();
      } else {
        params[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

std::string tool_version() { return WALKCOVER_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering probabilities of lattice random walks: exact enumeration, simulation and Green functions",
               "walkcover"};
  app.set_version_flag("--version", tool_version());
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  std::vector<Command> commands = register_commands(app);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (Command& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    const CommonOptions& common = *cmd.common;
    try {
      if (common.format != "json" && common.format != "csv") throw UsageError("--format must be json or csv");
      if (common.format == "csv" && !cmd.tabular) {
        throw UsageError("CSV output is available for tabular commands (sweep, compare) only");
      }
      RunRecord record;
      record.command = cmd.app->get_name();
      record.tool_version = tool_version();
      record.started = std::chrono::system_clock::now();
      CommandResult result = cmd.execute();
      record.finished = std::chrono::system_clock::now();
      record.parameters = option_values(*cmd.app);
      record.seed = result.seed;
      record.results = result.results;

      const std::string text = common.format == "csv" ? *result.csv : result.results.dump(2) + "\n";
      write_text(common.out, text, out);
      if (!common.record.empty()) write_text(common.record, record.to_json().dump(2) + "\n", out);
      return result.exit_code;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const walkcover::Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace walkcover::cli
