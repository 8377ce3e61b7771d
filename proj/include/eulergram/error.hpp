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

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace eulergram {

enum class ErrorKind {
  kInvalidArgument,
  kMarginViolation,
  kNotAdmissible,
  kNonLatticeShift,
  kCornerClash,
  kInvalidSpec,
  kRadiusTooSmall,
  kNoNormalAvailable,
  kMeshMismatch,
  kUnboundedGrain,
  kDegenerateArrangement,
  kUnsupportedMarkLaw,
  kNotBooleanRegime,
  kConfigInvalid,
  kIoError,
};

std::string_view error_name(ErrorKind kind);

// Every failure raised by the library. `context` carries the offending
// values so the CLI can emit them as machine-readable JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json context = nlohmann::json::object())
      : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }
  const nlohmann::json& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  nlohmann::json context_;
};

}  // namespace eulergram
