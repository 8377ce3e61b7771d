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
#include <string>
#include <vector>

#include <json.hpp>

#include "eulergram/geometry.hpp"

// Typed access to experiment configs. Every failure is a ConfigInvalid error
// naming the offending key.
namespace eulergram::config {

nlohmann::json load(const std::string& path);

const nlohmann::json& require(const nlohmann::json& j, const std::string& key);
double get_double(const nlohmann::json& j, const std::string& key);
double get_double(const nlohmann::json& j, const std::string& key, double fallback);
std::int64_t get_int(const nlohmann::json& j, const std::string& key, std::int64_t fallback);
std::uint64_t get_seed(const nlohmann::json& j, const std::string& key, std::uint64_t fallback);
bool get_bool(const nlohmann::json& j, const std::string& key, bool fallback);
std::vector<double> get_doubles(const nlohmann::json& j, const std::string& key);
Rect get_rect(const nlohmann::json& j, const std::string& key);

}  // namespace eulergram::config
