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

#ifndef RULESIFT_KERNELS_H_
#define RULESIFT_KERNELS_H_

// Bitmask kernels behind rule coverage. A coverage mask over n rows is a
// vector of ceil(n / 64) words; row i lives at bit (i % 64) of word i / 64.
// Bits past row n - 1 are always zero.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from CPUID; setting the
// environment variable RULESIFT_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace rulesift::kernels {

constexpr std::size_t WordsFor(std::size_t n_bits) { return (n_bits + 63) / 64; }

struct KernelTable {
  const char* name;
  // out[i] = values[i] <= threshold (ordered, quiet: NaN gives 0).
  void (*less_equal_mask)(const double* values, std::size_t n, double threshold,
                          std::uint64_t* out);
  // out[i] = values[i] > threshold (ordered, quiet: NaN gives 0).
  void (*greater_mask)(const double* values, std::size_t n, double threshold,
                       std::uint64_t* out);
  // out[i] = values[i] equals one of codes[0..n_codes).
  void (*in_set_mask)(const double* values, std::size_t n, const double* codes,
                      std::size_t n_codes, std::uint64_t* out);
  // dst &= src
  void (*and_inplace)(std::uint64_t* dst, const std::uint64_t* src,
                      std::size_t words);
  // dst &= ~src
  void (*andnot_inplace)(std::uint64_t* dst, const std::uint64_t* src,
                         std::size_t words);
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t n_words);
  // popcount(a & b) without materializing the intersection.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n_words);
};

const KernelTable& ScalarKernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* Avx2Kernels();

// Best table for this process, resolved once.
const KernelTable& ActiveKernels();

// Span conveniences over the active table.

inline void LessEqualMask(std::span<const double> values, double threshold,
                          std::span<std::uint64_t> out) {
  ActiveKernels().less_equal_mask(values.data(), values.size(), threshold,
                                  out.data());
}

inline void GreaterMask(std::span<const double> values, double threshold,
                        std::span<std::uint64_t> out) {
  ActiveKernels().greater_mask(values.data(), values.size(), threshold,
                               out.data());
}

inline void InSetMask(std::span<const double> values,
                      std::span<const double> codes,
                      std::span<std::uint64_t> out) {
  ActiveKernels().in_set_mask(values.data(), values.size(), codes.data(),
                              codes.size(), out.data());
}

inline void AndInPlace(std::span<std::uint64_t> dst,
                       std::span<const std::uint64_t> src) {
  ActiveKernels().and_inplace(dst.data(), src.data(), dst.size());
}

inline void AndNotInPlace(std::span<std::uint64_t> dst,
                          std::span<const std::uint64_t> src) {
  ActiveKernels().andnot_inplace(dst.data(), src.data(), dst.size());
}

inline std::uint64_t PopCount(std::span<const std::uint64_t> words) {
  return ActiveKernels().popcount(words.data(), words.size());
}

inline std::uint64_t AndPopCount(std::span<const std::uint64_t> a,
                                 std::span<const std::uint64_t> b) {
  return ActiveKernels().and_popcount(a.data(), b.data(), a.size());
}

}  // namespace rulesift::kernels

#endif  // RULESIFT_KERNELS_H_
