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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Word-level kernels behind the configuration counts and the discrete
// polyvariograms. Each kernel has a portable scalar reference and, where the
// build and the CPU allow it, an AVX2 variant. The active table is chosen once
// at startup; EULERGRAM_SIMD=scalar|avx2 overrides the choice.
namespace eulergram::simd {

// Pattern counts over the 2x2 windows anchored on one row pair.
// With a = lo, b = lo one column right, c = hi, d = hi one column right:
struct QuadCounts {
  std::uint64_t out = 0;     // a & ~b & ~c
  std::uint64_t in = 0;      // b & c & ~d
  std::uint64_t x_set = 0;   // a & ~b & ~c & d
  std::uint64_t x_comp = 0;  // ~a & b & c & ~d
  std::uint64_t full = 0;    // a & b & c & d
  std::uint64_t h_edges = 0; // a & b
  std::uint64_t v_edges = 0; // a & c

  QuadCounts& operator+=(const QuadCounts& o) {
    out += o.out;
    in += o.in;
    x_set += o.x_set;
    x_comp += o.x_comp;
    full += o.full;
    h_edges += o.h_edges;
    v_edges += o.v_edges;
    return *this;
  }
  friend bool operator==(const QuadCounts&, const QuadCounts&) = default;
};

struct Kernels {
  std::string_view name;
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t n);
  // popcount of AND over `plus` rows and AND-NOT over `minus` rows.
  std::uint64_t (*and_andnot_popcount)(const std::uint64_t* const* plus, std::size_t nplus,
                                       const std::uint64_t* const* minus, std::size_t nminus,
                                       std::size_t nwords);
  QuadCounts (*quad_counts)(const std::uint64_t* lo, const std::uint64_t* lo_right,
                            const std::uint64_t* hi, const std::uint64_t* hi_right,
                            std::size_t nwords);
};

const Kernels& scalar_kernels();
#if defined(EULERGRAM_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif

// Variants usable on this machine, scalar first.
std::vector<const Kernels*> available_kernels();
// The table used by the library.
const Kernels& active();

// out[w] = words shifted so that out bit i holds input bit i+1.
void shift_down_one(std::span<const std::uint64_t> in, std::span<std::uint64_t> out);

}  // namespace eulergram::simd
