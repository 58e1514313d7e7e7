// Copyright 2026 The sharediar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops used by the share arithmetic, the plaintext
// reference network and Hamming comparison. Every kernel has a portable
// scalar reference; vector variants are compiled per-ISA and picked once at
// runtime from CPU features. Set SHAREDIAR_ISA=scalar|avx2 to override.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sharediar::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // dst[i] = a[i] op b[i]; dst may alias a or b.
  void (*add)(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n);
  void (*sub)(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n);
  void (*mul)(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n);
  void (*bit_xor)(std::uint64_t* dst, const std::uint64_t* a,
                  const std::uint64_t* b, std::size_t n);
  void (*bit_and)(std::uint64_t* dst, const std::uint64_t* a,
                  const std::uint64_t* b, std::size_t n);

  // dst[i] += alpha * x[i] (mod 2^64)
  void (*axpy)(std::uint64_t* dst, std::uint64_t alpha, const std::uint64_t* x,
               std::size_t n);

  // Replicated cross terms: dst[i] += a0*b0 + a0*b1 + a1*b0.
  void (*cross_mul)(std::uint64_t* dst, const std::uint64_t* a0,
                    const std::uint64_t* a1, const std::uint64_t* b0,
                    const std::uint64_t* b1, std::size_t n);
  // Same over GF(2) words: dst[i] ^= a0&b0 ^ a0&b1 ^ a1&b0.
  void (*cross_and)(std::uint64_t* dst, const std::uint64_t* a0,
                    const std::uint64_t* a1, const std::uint64_t* b0,
                    const std::uint64_t* b1, std::size_t n);

  // Number of positions where a[i] != b[i].
  std::size_t (*mismatches)(const std::uint8_t* a, const std::uint8_t* b,
                            std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);
  // dst[i] += alpha * x[i]
  void (*axpy_f64)(double* dst, double alpha, const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not built or the CPU lacks the extension.
const KernelTable* avx2_kernels();

// Table chosen at first use; honours SHAREDIAR_ISA.
const KernelTable& kernels();

// Overrides the active table (tests, benchmarks). Throws ParameterError if
// the requested ISA is unavailable.
void select_isa(Isa isa);

// C[p x r] += A[p x q] * B[q x r] over Z_2^64, row-major.
void ring_matmul_acc(std::uint64_t* c, const std::uint64_t* a,
                     const std::uint64_t* b, std::size_t p, std::size_t q,
                     std::size_t r);

}  // namespace sharediar::simd
