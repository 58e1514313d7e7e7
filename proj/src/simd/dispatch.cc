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

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.h"
#include "sharediar/error.h"

namespace sharediar::simd {

#ifndef SHAREDIAR_HAVE_AVX2
namespace detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  const KernelTable* avx2 = avx2_kernels();
  if (const char* env = std::getenv("SHAREDIAR_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2 != nullptr) return avx2;
  }
  return avx2 != nullptr ? avx2 : &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
  static const KernelTable* table =
      cpu_supports_avx2() ? detail::avx2_table() : nullptr;
  return table;
}

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  const KernelTable* table =
      isa == Isa::kScalar ? &scalar_kernels() : avx2_kernels();
  if (table == nullptr) {
    throw ParameterError("ISA " + std::string(isa_name(isa)) +
                         " not available on this build/CPU");
  }
  active().store(table, std::memory_order_relaxed);
}

void ring_matmul_acc(std::uint64_t* c, const std::uint64_t* a,
                     const std::uint64_t* b, std::size_t p, std::size_t q,
                     std::size_t r) {
  const KernelTable& k = kernels();
  for (std::size_t i = 0; i < p; ++i) {
    std::uint64_t* c_row = c + i * r;
    const std::uint64_t* a_row = a + i * q;
    for (std::size_t j = 0; j < q; ++j) {
      k.axpy(c_row, a_row[j], b + j * r, r);
    }
  }
}

}  // namespace sharediar::simd
