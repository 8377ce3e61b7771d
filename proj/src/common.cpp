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
#include <cmath>

#include "eulergram/error.hpp"
#include "eulergram/geometry.hpp"

namespace eulergram {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kMarginViolation: return "MarginViolation";
    case ErrorKind::kNotAdmissible: return "NotAdmissible";
    case ErrorKind::kNonLatticeShift: return "NonLatticeShift";
    case ErrorKind::kCornerClash: return "CornerClash";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kRadiusTooSmall: return "RadiusTooSmall";
    case ErrorKind::kNoNormalAvailable: return "NoNormalAvailable";
    case ErrorKind::kMeshMismatch: return "MeshMismatch";
    case ErrorKind::kUnboundedGrain: return "UnboundedGrain";
    case ErrorKind::kDegenerateArrangement: return "DegenerateArrangement";
    case ErrorKind::kUnsupportedMarkLaw: return "UnsupportedMarkLaw";
    case ErrorKind::kNotBooleanRegime: return "NotBooleanRegime";
    case ErrorKind::kConfigInvalid: return "ConfigInvalid";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

}  // namespace eulergram
