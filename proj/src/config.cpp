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

#include "eulergram/config.hpp"

#include <fstream>
#include <sstream>

#include "eulergram/error.hpp"

namespace eulergram::config {
namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::kConfigInvalid, "config key '" + key + "': " + what, {{"key", key}});
}

}  // namespace

nlohmann::json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open config", {{"path", path}});
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(ss.str());
    if (!j.is_object()) invalid("<root>", "must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfigInvalid, std::string("config is not valid JSON: ") + e.what(),
                {{"path", path}});
  }
}

const nlohmann::json& require(const nlohmann::json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) invalid(key, "missing");
  return j.at(key);
}

double get_double(const nlohmann::json& j, const std::string& key) {
  const auto& v = require(j, key);
  if (!v.is_number()) invalid(key, "expected a number");
  return v.get<double>();
}

double get_double(const nlohmann::json& j, const std::string& key, double fallback) {
  return j.contains(key) ? get_double(j, key) : fallback;
}

std::int64_t get_int(const nlohmann::json& j, const std::string& key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) invalid(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_seed(const nlohmann::json& j, const std::string& key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    invalid(key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const nlohmann::json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_boolean()) invalid(key, "expected true or false");
  return v.get<bool>();
}

std::vector<double> get_doubles(const nlohmann::json& j, const std::string& key) {
  const auto& v = require(j, key);
  if (!v.is_array() || v.empty()) invalid(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) invalid(key, "expected a non-empty array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Rect get_rect(const nlohmann::json& j, const std::string& key) {
  const auto v = get_doubles(j, key);
  if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) invalid(key, "expected [x0, x1, y0, y1]");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace eulergram::config
