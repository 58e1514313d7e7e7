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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace sharediar::mpc {

using Seed = std::array<std::uint8_t, 32>;

// Deterministic ChaCha20 keystream, consumed as 64-bit words. Satisfies
// UniformRandomBitGenerator so it plugs into <random> as well.
class Prg {
 public:
  using result_type = std::uint64_t;

  explicit Prg(const Seed& seed);

  // BLAKE2b(master || label || tag) truncated to a seed.
  static Seed derive(std::uint64_t master, std::string_view label,
                     std::uint64_t tag = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();
  void fill(std::span<std::uint64_t> out);

 private:
  void refill();

  static constexpr std::size_t kBufferWords = 512;

  Seed key_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, kBufferWords> buffer_{};
  std::size_t pos_ = kBufferWords;
};

}  // namespace sharediar::mpc
