/*
 * Copyright 2026 The Rulesift Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Compiled with -mavx2. Nothing in this file may run before the dispatcher
// has confirmed AVX2 support.

#include <immintrin.h>

#include <bit>
#include <cstring>

#include "rulesift/kernels.h"

namespace rulesift::kernels {
namespace {

// Eight comparisons per step; two movemasks give one byte of the output word.
template <int kPredicate>
void CompareMask(const double* values, std::size_t n, double threshold,
                 std::uint64_t* out) {
  std::memset(out, 0, WordsFor(n) * sizeof(std::uint64_t));
  const __m256d t = _mm256_set1_pd(threshold);
  auto* bytes = reinterpret_cast<unsigned char*>(out);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d lo = _mm256_loadu_pd(values + i);
    const __m256d hi = _mm256_loadu_pd(values + i + 4);
    const int bits_lo = _mm256_movemask_pd(_mm256_cmp_pd(lo, t, kPredicate));
    const int bits_hi = _mm256_movemask_pd(_mm256_cmp_pd(hi, t, kPredicate));
    // Little-endian word layout: byte i / 8 holds rows i..i+7.
    bytes[i >> 3] = static_cast<unsigned char>(bits_lo | (bits_hi << 4));
  }
  for (; i < n; ++i) {
    const bool hit = kPredicate == _CMP_LE_OQ ? values[i] <= threshold
                                              : values[i] > threshold;
    if (hit) out[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
}

void LessEqualAvx2(const double* values, std::size_t n, double threshold,
                   std::uint64_t* out) {
  CompareMask<_CMP_LE_OQ>(values, n, threshold, out);
}

void GreaterAvx2(const double* values, std::size_t n, double threshold,
                 std::uint64_t* out) {
  CompareMask<_CMP_GT_OQ>(values, n, threshold, out);
}

void InSetAvx2(const double* values, std::size_t n, const double* codes,
               std::size_t n_codes, std::uint64_t* out) {
  std::memset(out, 0, WordsFor(n) * sizeof(std::uint64_t));
  auto* bytes = reinterpret_cast<unsigned char*>(out);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d lo = _mm256_loadu_pd(values + i);
    const __m256d hi = _mm256_loadu_pd(values + i + 4);
    __m256d hit_lo = _mm256_setzero_pd();
    __m256d hit_hi = _mm256_setzero_pd();
    for (std::size_t c = 0; c < n_codes; ++c) {
      const __m256d code = _mm256_set1_pd(codes[c]);
      hit_lo = _mm256_or_pd(hit_lo, _mm256_cmp_pd(lo, code, _CMP_EQ_OQ));
      hit_hi = _mm256_or_pd(hit_hi, _mm256_cmp_pd(hi, code, _CMP_EQ_OQ));
    }
    bytes[i >> 3] = static_cast<unsigned char>(
        _mm256_movemask_pd(hit_lo) | (_mm256_movemask_pd(hit_hi) << 4));
  }
  for (; i < n; ++i) {
    for (std::size_t c = 0; c < n_codes; ++c) {
      if (values[i] == codes[c]) {
        out[i >> 6] |= std::uint64_t{1} << (i & 63);
        break;
      }
    }
  }
}

void AndAvx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + w);
    const auto* s = reinterpret_cast<const __m256i*>(src + w);
    _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d),
                                            _mm256_loadu_si256(s)));
  }
  for (; w < words; ++w) dst[w] &= src[w];
}

void AndNotAvx2(std::uint64_t* dst, const std::uint64_t* src,
                std::size_t words) {
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + w);
    const auto* s = reinterpret_cast<const __m256i*>(src + w);
    // andnot(a, b) = ~a & b
    _mm256_storeu_si256(d, _mm256_andnot_si256(_mm256_loadu_si256(s),
                                               _mm256_loadu_si256(d)));
  }
  for (; w < words; ++w) dst[w] &= ~src[w];
}

// Nibble-lookup population count (Mula et al.), accumulated with SAD.
inline __m256i PopCountBytes(__m256i v) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                         _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t HorizontalSum(__m256i acc) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

std::uint64_t PopCountAvx2(const std::uint64_t* words, std::size_t n_words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= n_words; w += 4) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + w));
    acc = _mm256_add_epi64(
        acc, _mm256_sad_epu8(PopCountBytes(v), _mm256_setzero_si256()));
  }
  std::uint64_t total = HorizontalSum(acc);
  for (; w < n_words; ++w) total += std::popcount(words[w]);
  return total;
}

std::uint64_t AndPopCountAvx2(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t n_words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= n_words; w += 4) {
    const __m256i v = _mm256_and_si256(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + w)),
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + w)));
    acc = _mm256_add_epi64(
        acc, _mm256_sad_epu8(PopCountBytes(v), _mm256_setzero_si256()));
  }
  std::uint64_t total = HorizontalSum(acc);
  for (; w < n_words; ++w) total += std::popcount(a[w] & b[w]);
  return total;
}

}  // namespace

const KernelTable& Avx2KernelTable() {
  static const KernelTable table{
      "avx2",  LessEqualAvx2, GreaterAvx2,  InSetAvx2,
      AndAvx2, AndNotAvx2,    PopCountAvx2, AndPopCountAvx2,
  };
  return table;
}

}  // namespace rulesift::kernels
