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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sharediar/mpc/prg.h"
#include "sharediar/mpc/protocol.h"
#include "sharediar/ring.h"

namespace sharediar::mpc {

// Correlated randomness for probabilistic truncation by `shift` bits:
// r uniform below 2^(value_bits + stat_sec) and r >> shift.
struct TruncPair {
  Shared r;
  Shared r_shifted;
};

// Random bits held in both domains (bit 0 of each boolean word).
struct DaBits {
  Shared bits;   // boolean
  Shared arith;  // same bits as 0/1 ring elements
};

// Random boolean words with arithmetic shares of all 64 bits, bit-major per
// word: arith[64 * i + j] is bit j of word i.
struct DaWords {
  Shared words;
  Shared arith;
};

struct TruncConfig {
  // Secret values entering truncation must satisfy |x| < 2^(value_bits - 1).
  int value_bits = 48;
  // Statistical masking parameter; value_bits + stat_sec <= 63.
  int stat_sec = 15;

  void validate() const;
};

// Trusted offline dealer. Correlations are generated on demand unless a
// budget is set, in which case drawing past it throws RandomnessExhausted.
class Dealer {
 public:
  Dealer(Protocol& proto, std::uint64_t seed, TruncConfig config = {},
         std::optional<std::size_t> budget = std::nullopt);

  TruncPair trunc_pairs(std::size_t n, int shift);
  DaBits dabits(std::size_t n);
  DaWords dawords(std::size_t n);

  std::size_t used() const { return used_; }

 private:
  void consume(std::size_t n);

  Protocol& proto_;
  TruncConfig config_;
  std::optional<std::size_t> budget_;
  std::size_t used_ = 0;
  Prg rng_;
};

// Fixed-point secure primitives over a Protocol: truncation, bit
// decomposition, comparison, ReLU, matrix products and inverse square
// root. Every fixed-point product is followed by exactly one truncation;
// the counters below make that auditable.
//
// With debug() on, a plaintext shadow reconstructs intermediates (outside
// the protocol, not accounted) and throws OverflowError / DomainError when
// they leave the supported range.
class SecureOps {
 public:
  SecureOps(Protocol& proto, Dealer& dealer, FixedPointCodec codec = {},
            TruncConfig trunc = {});

  Protocol& proto() { return proto_; }
  const FixedPointCodec& codec() const { return codec_; }
  const TruncConfig& trunc_config() const { return trunc_; }

  void set_debug(bool on) { debug_ = on; }
  bool debug() const { return debug_; }

  // x / 2^shift, off by at most one unit in the last place. One round.
  Shared trunc(const Shared& x, int shift);
  // Boolean share whose words are the two's complement bits of x.
  Shared a2b(const Shared& x);
  // Bit 0 of each word: 1 iff x < 0 as a signed value.
  Shared msb(const Shared& x);
  // Boolean bits (bit 0) to arithmetic 0/1. One round.
  Shared b2a_bit(const Shared& bits);
  // All 64 bits of every word to arithmetic 0/1, bit-major per word.
  Shared b2a_words(const Shared& words);
  Shared relu(const Shared& x);

  // Fixed-point element-wise product.
  Shared fmul(const Shared& a, const Shared& b);
  // Fixed-point W[p x q] * X[q x r]; one truncation per output element.
  Shared matmul(const Shared& w, const Shared& x, std::size_t p, std::size_t q,
                std::size_t r);
  // x * c for a public real c. The constant is encoded with `extra_bits`
  // additional fractional bits and the product truncated once.
  Shared mul_public_fixed(const Shared& x, double c, int extra_bits = 0);
  // Same with one constant per element.
  Shared mul_public_fixed(const Shared& x, std::span<const double> c,
                          int extra_bits = 0);

  // Newton-Raphson 1/sqrt(x) for x >= 2^-8 (fixed point). The initial guess
  // comes from the position of the leading one bit of x, selected from a
  // public table with a secret one-hot vector.
  Shared inv_sqrt(const Shared& x, int iterations = 5);

  // 64-bit adder over boolean shares (parallel prefix, 12 AND words).
  Shared add_bits(const Shared& a, const Shared& b);

  std::uint64_t fixed_products() const { return fixed_products_; }
  std::uint64_t truncations() const { return truncations_; }
  std::uint64_t and_words() const { return and_words_; }

 private:
  Shared and_(const Shared& a, const Shared& b);
  void shadow_check_trunc_input(const Shared& x, int shift);
  void shadow_check_codec_range(const Shared& x, const char* what);

  Protocol& proto_;
  Dealer& dealer_;
  FixedPointCodec codec_;
  TruncConfig trunc_;
  bool debug_ = false;
  std::uint64_t fixed_products_ = 0;
  std::uint64_t truncations_ = 0;
  std::uint64_t and_words_ = 0;
};

// Smallest value accepted by inv_sqrt and the variance clamp, 2^-8.
inline constexpr double kEpsilonVar = 1.0 / 256.0;

}  // namespace sharediar::mpc
