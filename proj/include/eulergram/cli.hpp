// Copyright 2026 The eulergram Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace eulergram::cli {

// One output file produced by a command, written under the output directory.
struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandOutput {
  nlohmann::json resolved_config;  // input with every default filled in
  std::optional<std::uint64_t> seed;
  nlohmann::json results;
  std::vector<OutputFile> files;
};

using Command = std::function<CommandOutput(const nlohmann::json& config)>;

struct CommandInfo {
  std::string_view name;
  std::string_view summary;
  Command run;
};

const std::vector<CommandInfo>& commands();

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  bool timestamp = true;
};

// Runs one subcommand end to end: loads the config, writes report.json and
// the command's files. Returns the process exit code; failures are printed
// to stderr as a JSON object.
int run(std::string_view name, const RunOptions& options);

// Report document for a finished command.
nlohmann::json make_report(std::string_view name, const CommandOutput& out, bool timestamp);
// {"error": <kind>, "message": ..., "context": {...}}
nlohmann::json error_json(const std::exception& e);

}  // namespace eulergram::cli
