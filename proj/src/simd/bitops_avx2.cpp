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

#include <immintrin.h>

#include <bit>

#include "eulergram/simd.hpp"

namespace eulergram::simd {
namespace {

// Nibble-table popcount (Mula): per-byte counts summed into 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes =
      _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= n; w += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(words + w)));
  std::uint64_t total = horizontal_sum(acc);
  for (; w < n; ++w) total += std::popcount(words[w]);
  return total;
}

std::uint64_t and_andnot_avx2(const std::uint64_t* const* plus, std::size_t nplus,
                              const std::uint64_t* const* minus, std::size_t nminus,
                              std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= nwords; w += 4) {
    __m256i v = _mm256_set1_epi64x(-1);
    for (std::size_t k = 0; k < nplus; ++k) v = _mm256_and_si256(v, load(plus[k] + w));
    for (std::size_t k = 0; k < nminus; ++k) v = _mm256_andnot_si256(load(minus[k] + w), v);
    acc = _mm256_add_epi64(acc, popcount_lanes(v));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; w < nwords; ++w) {
    std::uint64_t x = ~std::uint64_t{0};
    for (std::size_t k = 0; k < nplus; ++k) x &= plus[k][w];
    for (std::size_t k = 0; k < nminus; ++k) x &= ~minus[k][w];
    total += std::popcount(x);
  }
  return total;
}

QuadCounts quad_avx2(const std::uint64_t* lo, const std::uint64_t* lo_right,
                     const std::uint64_t* hi, const std::uint64_t* hi_right, std::size_t nwords) {
  __m256i out_acc = _mm256_setzero_si256(), in_acc = out_acc, xs_acc = out_acc,
          xc_acc = out_acc, full_acc = out_acc, h_acc = out_acc, v_acc = out_acc;
  std::size_t w = 0;
  for (; w + 4 <= nwords; w += 4) {
    const __m256i a = load(lo + w), b = load(lo_right + w), c = load(hi + w),
                  d = load(hi_right + w);
    const __m256i out = _mm256_andnot_si256(_mm256_or_si256(b, c), a);
    const __m256i in = _mm256_andnot_si256(d, _mm256_and_si256(b, c));
    const __m256i ab = _mm256_and_si256(a, b);
    out_acc = _mm256_add_epi64(out_acc, popcount_lanes(out));
    in_acc = _mm256_add_epi64(in_acc, popcount_lanes(in));
    xs_acc = _mm256_add_epi64(xs_acc, popcount_lanes(_mm256_and_si256(out, d)));
    xc_acc = _mm256_add_epi64(xc_acc, popcount_lanes(_mm256_andnot_si256(a, in)));
    full_acc = _mm256_add_epi64(full_acc, popcount_lanes(_mm256_and_si256(ab, _mm256_and_si256(c, d))));
    h_acc = _mm256_add_epi64(h_acc, popcount_lanes(ab));
    v_acc = _mm256_add_epi64(v_acc, popcount_lanes(_mm256_and_si256(a, c)));
  }
  QuadCounts q;
  q.out = horizontal_sum(out_acc);
  q.in = horizontal_sum(in_acc);
  q.x_set = horizontal_sum(xs_acc);
  q.x_comp = horizontal_sum(xc_acc);
  q.full = horizontal_sum(full_acc);
  q.h_edges = horizontal_sum(h_acc);
  q.v_edges = horizontal_sum(v_acc);
  if (w < nwords) {
    q += scalar_kernels().quad_counts(lo + w, lo_right + w, hi + w, hi_right + w, nwords - w);
  }
  return q;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{"avx2", &popcount_avx2, &and_andnot_avx2, &quad_avx2};
  return k;
}

}  // namespace eulergram::simd
