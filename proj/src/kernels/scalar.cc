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

#include <bit>
#include <cstring>

#include "rulesift/kernels.h"

namespace rulesift::kernels {
namespace {

template <typename Predicate>
void BuildMask(const double* values, std::size_t n, Predicate pred,
               std::uint64_t* out) {
  std::memset(out, 0, WordsFor(n) * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < n; ++i) {
    if (pred(values[i])) out[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
}

void LessEqualScalar(const double* values, std::size_t n, double threshold,
                     std::uint64_t* out) {
  BuildMask(values, n, [threshold](double v) { return v <= threshold; }, out);
}

void GreaterScalar(const double* values, std::size_t n, double threshold,
                   std::uint64_t* out) {
  BuildMask(values, n, [threshold](double v) { return v > threshold; }, out);
}

void InSetScalar(const double* values, std::size_t n, const double* codes,
                 std::size_t n_codes, std::uint64_t* out) {
  BuildMask(
      values, n,
      [codes, n_codes](double v) {
        for (std::size_t c = 0; c < n_codes; ++c) {
          if (v == codes[c]) return true;
        }
        return false;
      },
      out);
}

void AndScalar(std::uint64_t* dst, const std::uint64_t* src,
               std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] &= src[w];
}

void AndNotScalar(std::uint64_t* dst, const std::uint64_t* src,
                  std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] &= ~src[w];
}

std::uint64_t PopCountScalar(const std::uint64_t* words, std::size_t n_words) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < n_words; ++w) total += std::popcount(words[w]);
  return total;
}

std::uint64_t AndPopCountScalar(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n_words) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < n_words; ++w) total += std::popcount(a[w] & b[w]);
  return total;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{
      "scalar",     LessEqualScalar, GreaterScalar,  InSetScalar,
      AndScalar,    AndNotScalar,    PopCountScalar, AndPopCountScalar,
  };
  return table;
}

}  // namespace rulesift::kernels
