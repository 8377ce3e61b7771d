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

#include <bit>

#include "eulergram/simd.hpp"

namespace eulergram::simd {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < n; ++w) total += std::popcount(words[w]);
  return total;
}

std::uint64_t and_andnot_scalar(const std::uint64_t* const* plus, std::size_t nplus,
                                const std::uint64_t* const* minus, std::size_t nminus,
                                std::size_t nwords) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < nwords; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (std::size_t k = 0; k < nplus; ++k) acc &= plus[k][w];
    for (std::size_t k = 0; k < nminus; ++k) acc &= ~minus[k][w];
    total += std::popcount(acc);
  }
  return total;
}

QuadCounts quad_scalar(const std::uint64_t* lo, const std::uint64_t* lo_right,
                       const std::uint64_t* hi, const std::uint64_t* hi_right,
                       std::size_t nwords) {
  QuadCounts q;
  for (std::size_t w = 0; w < nwords; ++w) {
    const std::uint64_t a = lo[w], b = lo_right[w], c = hi[w], d = hi_right[w];
    const std::uint64_t out = a & ~b & ~c;
    const std::uint64_t in = b & c & ~d;
    q.out += std::popcount(out);
    q.in += std::popcount(in);
    q.x_set += std::popcount(out & d);
    q.x_comp += std::popcount(in & ~a);
    q.full += std::popcount(a & b & c & d);
    q.h_edges += std::popcount(a & b);
    q.v_edges += std::popcount(a & c);
  }
  return q;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", &popcount_scalar, &and_andnot_scalar, &quad_scalar};
  return k;
}

void shift_down_one(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) {
  const std::size_t n = in.size();
  for (std::size_t w = 0; w < n; ++w) {
    const std::uint64_t next = (w + 1 < n) ? in[w + 1] : 0;
    out[w] = (in[w] >> 1) | (next << 63);
  }
}

}  // namespace eulergram::simd
