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

#include "kernels_impl.h"

namespace sharediar::simd {
namespace {

void add_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void xor_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void and_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void axpy_scalar(std::uint64_t* dst, std::uint64_t alpha,
                 const std::uint64_t* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += alpha * x[i];
}

void cross_mul_scalar(std::uint64_t* dst, const std::uint64_t* a0,
                      const std::uint64_t* a1, const std::uint64_t* b0,
                      const std::uint64_t* b1, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] += a0[i] * b0[i] + a0[i] * b1[i] + a1[i] * b0[i];
  }
}

void cross_and_scalar(std::uint64_t* dst, const std::uint64_t* a0,
                      const std::uint64_t* a1, const std::uint64_t* b0,
                      const std::uint64_t* b1, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] ^= (a0[i] & b0[i]) ^ (a0[i] & b1[i]) ^ (a1[i] & b0[i]);
  }
}

std::size_t mismatches_scalar(const std::uint8_t* a, const std::uint8_t* b,
                              std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += a[i] != b[i];
  return count;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_f64_scalar(double* dst, double alpha, const double* x,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += alpha * x[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::kScalar,     add_scalar,        sub_scalar,
      mul_scalar,       xor_scalar,        and_scalar,
      axpy_scalar,      cross_mul_scalar,  cross_and_scalar,
      mismatches_scalar, dot_scalar,       axpy_f64_scalar,
  };
  return table;
}

}  // namespace sharediar::simd
