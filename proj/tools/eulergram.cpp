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

#include <CLI11.hpp>

#include "eulergram/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"eulergram: Euler characteristic and Minkowski functionals from digitizations"};
  app.require_subcommand(1);

  eulergram::cli::RunOptions options;
  std::string chosen;
  for (const auto& cmd : eulergram::cli::commands()) {
    auto* sub = app.add_subcommand(std::string(cmd.name), std::string(cmd.summary));
    sub->add_option("--config", options.config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", options.out_dir, "output directory")->required();
    sub->add_flag("--no-timestamp", [&options](std::int64_t) { options.timestamp = false; },
                  "omit the timestamp field from report.json");
    sub->callback([&chosen, name = std::string(cmd.name)] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  return eulergram::cli::run(chosen, options);
}
