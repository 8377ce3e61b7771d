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

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "eulergram/cli.hpp"
#include "eulergram/config.hpp"
#include "eulergram/error.hpp"

namespace eulergram::cli {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorKind::kIoError, "cannot write output file", {{"path", path.string()}});
}

}  // namespace

nlohmann::json make_report(std::string_view name, const CommandOutput& out, bool timestamp) {
  nlohmann::json r;
  r["command"] = name;
  r["config"] = out.resolved_config;
  r["seed"] = out.seed ? nlohmann::json(*out.seed) : nlohmann::json(nullptr);
  if (timestamp) r["timestamp"] = utc_now();
  r["results"] = out.results;
  auto files = nlohmann::json::array();
  for (const auto& f : out.files) files.push_back(f.name);
  r["files"] = files;
  return r;
}

nlohmann::json error_json(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return {{"error", err->name()}, {"message", err->what()}, {"context", err->context()}};
  }
  return {{"error", "InternalError"}, {"message", e.what()}, {"context", nlohmann::json::object()}};
}

int run(std::string_view name, const RunOptions& options) {
  try {
    const auto& table = commands();
    const auto it = std::find_if(table.begin(), table.end(), [&](const CommandInfo& c) { return c.name == name; });
    if (it == table.end()) {
      throw Error(ErrorKind::kConfigInvalid, "unknown subcommand", {{"subcommand", name}});
    }
    const auto cfg = config::load(options.config_path);
    const CommandOutput out = it->run(cfg);

    const std::filesystem::path dir(options.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::kIoError, "cannot create output directory", {{"path", options.out_dir}});
    for (const auto& f : out.files) write_file(dir / f.name, f.content);
    write_file(dir / "report.json", make_report(name, out, options.timestamp).dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json(e).dump() << std::endl;
    return 3;
  }
}

}  // namespace eulergram::cli
