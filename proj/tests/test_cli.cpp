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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eulergram/cli.hpp"
#include "eulergram/config.hpp"
#include "eulergram/error.hpp"

namespace fs = std::filesystem;
using namespace eulergram;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eulergram_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
  const auto p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

std::string config_error_key(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfigInvalid);
    return e.context().value("key", std::string{});
  }
  FAIL("no ConfigInvalid raised");
  return {};
}

const fs::path kConfigs = EULERGRAM_CONFIG_DIR;

}  // namespace

TEST_CASE("config accessors name the missing or malformed key") {
  const json j = json::parse(R"({"a": 1.5, "s": "x", "r": [0, 1, 0], "n": -3})");
  CHECK(config_error_key([&] { config::require(j, "epsilon"); }) == "epsilon");
  CHECK(config_error_key([&] { config::get_double(j, "s"); }) == "s");
  CHECK(config_error_key([&] { config::get_rect(j, "r"); }) == "r");
  CHECK(config_error_key([&] { config::get_seed(j, "n", 1); }) == "n");
  CHECK(config::get_double(j, "missing", 2.5) == 2.5);
  CHECK(config::get_double(j, "a") == 1.5);
}

TEST_CASE("config loading errors") {
  const auto dir = scratch("load");
  CHECK_THROWS_AS(config::load((dir / "absent.json").string()), Error);
  std::ofstream(dir / "bad.json") << "{ not json";
  try {
    config::load((dir / "bad.json").string());
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfigInvalid);
  }
}

TEST_CASE("command table") {
  std::vector<std::string> names;
  for (const auto& c : cli::commands()) names.emplace_back(c.name);
  for (const char* n : {"chi", "sweep", "perimeter", "bounds", "shotnoise", "densities"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("unknown command and missing keys exit with a code") {
  const auto dir = scratch("errors");
  const auto cfg = write_config(dir, json{{"shape", {{"type", "disc"}, {"center", {0, 0}}, {"r", 1}}}});
  CHECK(cli::run("frobnicate", {cfg.string(), (dir / "out").string(), false}) == 2);
  CHECK(cli::run("chi", {cfg.string(), (dir / "out").string(), false}) == 2);  // no epsilon
  CHECK(!fs::exists(dir / "out" / "report.json"));
}

TEST_CASE("error_json carries kind and context") {
  const Error e(ErrorKind::kConfigInvalid, "missing key", {{"key", "epsilon"}});
  const auto j = cli::error_json(e);
  CHECK(j["error"] == "ConfigInvalid");
  CHECK(j["context"]["key"] == "epsilon");
  CHECK(cli::error_json(std::runtime_error("boom"))["error"] == "InternalError");
}

TEST_CASE("chi on the example disc") {
  const auto dir = scratch("chi");
  REQUIRE(cli::run("chi", {(kConfigs / "chi_disc.json").string(), dir.string(), false}) == 0);
  const auto rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep["command"] == "chi");
  CHECK(!rep.contains("timestamp"));
  CHECK(rep["results"]["chi_local"] == 1);
  CHECK(rep["results"]["chi_components"] == 1);
  CHECK(rep["config"]["margin"] == 2);
  CHECK(fs::exists(dir / "grid.pbm"));
  CHECK(slurp(dir / "grid.pbm").rfind("P4", 0) == 0);
}

TEST_CASE("reports are byte-identical without a timestamp") {
  for (const char* cfg : {"sweep_annulus.json", "shotnoise_unit_square.json"}) {
    const auto a = scratch("same_a"), b = scratch("same_b");
    REQUIRE(cli::run(cfg[1] == 'w' ? "sweep" : "shotnoise", {(kConfigs / cfg).string(), a.string(), false}) == 0);
    REQUIRE(cli::run(cfg[1] == 'w' ? "sweep" : "shotnoise", {(kConfigs / cfg).string(), b.string(), false}) == 0);
    for (const auto& entry : fs::directory_iterator(a)) {
      INFO(entry.path().filename().string());
      CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
  }
}

TEST_CASE("sweep on the annulus stabilises at zero") {
  const auto dir = scratch("sweep");
  REQUIRE(cli::run("sweep", {(kConfigs / "sweep_annulus.json").string(), dir.string(), true}) == 0);
  const auto rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep.contains("timestamp"));
  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "epsilon,nx,ny,admissible,chi_local,chi_vef,chi_components,chi_bicovariogram");
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::stringstream ss(rows[i]);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    CHECK(cells.at(4) == "0");
    CHECK(cells.at(6) == "0");
  }
  CHECK(rep["results"]["plateau"]["value"] == 0);
}

TEST_CASE("binary entry point") {
  const auto dir = scratch("binary");
  const std::string tool = EULERGRAM_TOOL_PATH;
  const std::string ok = tool + " chi --config " + (kConfigs / "chi_disc.json").string() + " --out " +
                         (dir / "ok").string() + " --no-timestamp 2>" + (dir / "err.txt").string();
  CHECK(std::system(ok.c_str()) == 0);
  CHECK(fs::exists(dir / "ok" / "report.json"));

  const auto bad = write_config(dir, json{{"epsilon", 0.1}});
  const std::string fail =
      tool + " chi --config " + bad.string() + " --out " + (dir / "bad").string() + " 2>" + (dir / "err.txt").string();
  CHECK(std::system(fail.c_str()) != 0);
  const auto err = json::parse(slurp(dir / "err.txt"));
  CHECK(err["error"] == "ConfigInvalid");
  CHECK(err["context"]["key"] == "shape");

  const std::string missing = tool + " chi --out " + (dir / "x").string() + " >/dev/null 2>&1";
  CHECK(std::system(missing.c_str()) != 0);
}
