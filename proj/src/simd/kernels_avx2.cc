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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "kernels_impl.h"

namespace sharediar::simd {
namespace {

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Low 64 bits of the lane-wise product. AVX2 has no 64x64 multiply, so it
// is assembled from three 32x32->64 partial products.
inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i cross =
      _mm256_add_epi64(_mm256_mul_epu32(a, b_hi), _mm256_mul_epu32(a_hi, b));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

void add_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(dst + i, _mm256_add_epi64(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(dst + i, _mm256_sub_epi64(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(dst + i, mullo64(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void xor_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(dst + i, _mm256_xor_si256(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void and_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void axpy_avx2(std::uint64_t* dst, std::uint64_t alpha, const std::uint64_t* x,
               std::size_t n) {
  const __m256i a_lo = _mm256_set1_epi64x(static_cast<long long>(alpha));
  const __m256i a_hi = _mm256_set1_epi64x(static_cast<long long>(alpha >> 32));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i xv = load(x + i);
    const __m256i lo = _mm256_mul_epu32(xv, a_lo);
    const __m256i cross =
        _mm256_add_epi64(_mm256_mul_epu32(xv, a_hi),
                         _mm256_mul_epu32(_mm256_srli_epi64(xv, 32), a_lo));
    const __m256i prod = _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
    store(dst + i, _mm256_add_epi64(load(dst + i), prod));
  }
  for (; i < n; ++i) dst[i] += alpha * x[i];
}

void cross_mul_avx2(std::uint64_t* dst, const std::uint64_t* a0,
                    const std::uint64_t* a1, const std::uint64_t* b0,
                    const std::uint64_t* b1, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x0 = load(a0 + i);
    const __m256i y0 = load(b0 + i);
    // a0*(b0 + b1) + a1*b0
    const __m256i t = _mm256_add_epi64(
        mullo64(x0, _mm256_add_epi64(y0, load(b1 + i))),
        mullo64(load(a1 + i), y0));
    store(dst + i, _mm256_add_epi64(load(dst + i), t));
  }
  for (; i < n; ++i) dst[i] += a0[i] * b0[i] + a0[i] * b1[i] + a1[i] * b0[i];
}

void cross_and_avx2(std::uint64_t* dst, const std::uint64_t* a0,
                    const std::uint64_t* a1, const std::uint64_t* b0,
                    const std::uint64_t* b1, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x0 = load(a0 + i);
    const __m256i y0 = load(b0 + i);
    const __m256i t = _mm256_xor_si256(
        _mm256_and_si256(x0, _mm256_xor_si256(y0, load(b1 + i))),
        _mm256_and_si256(load(a1 + i), y0));
    store(dst + i, _mm256_xor_si256(load(dst + i), t));
  }
  for (; i < n; ++i) {
    dst[i] ^= (a0[i] & b0[i]) ^ (a0[i] & b1[i]) ^ (a1[i] & b0[i]);
  }
}

std::size_t mismatches_avx2(const std::uint8_t* a, const std::uint8_t* b,
                            std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const auto equal =
        static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    count += 32 - std::popcount(equal);
  }
  for (; i < n; ++i) count += a[i] != b[i];
  return count;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                  _mm256_extractf128_pd(acc, 1));
  double sum = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_f64_avx2(double* dst, double alpha, const double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                              _mm256_loadu_pd(dst + i)));
  }
  for (; i < n; ++i) dst[i] += alpha * x[i];
}

}  // namespace

namespace detail {

const KernelTable* avx2_table() {
  static const KernelTable table{
      Isa::kAvx2,     add_avx2,        sub_avx2,       mul_avx2,
      xor_avx2,       and_avx2,        axpy_avx2,      cross_mul_avx2,
      cross_and_avx2, mismatches_avx2, dot_avx2,       axpy_f64_avx2,
  };
  return &table;
}

}  // namespace detail
}  // namespace sharediar::simd
