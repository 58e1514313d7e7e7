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

#include "sharediar/mpc/prg.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "sharediar/error.h"

namespace sharediar::mpc {
namespace {

const std::array<unsigned char, crypto_stream_chacha20_NONCEBYTES> kNonce{};

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error("libsodium initialisation failed");
}

// Overwrites out with keystream blocks starting at block index ic.
void keystream(std::uint64_t* out, std::size_t words, std::uint64_t ic,
               const Seed& key) {
  auto* bytes = reinterpret_cast<unsigned char*>(out);
  std::memset(bytes, 0, words * sizeof(std::uint64_t));
  crypto_stream_chacha20_xor_ic(bytes, bytes, words * sizeof(std::uint64_t),
                                kNonce.data(), ic, key.data());
}

}  // namespace

Prg::Prg(const Seed& seed) : key_(seed) { ensure_sodium(); }

Seed Prg::derive(std::uint64_t master, std::string_view label,
                 std::uint64_t tag) {
  ensure_sodium();
  Seed out{};
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, out.size());
  unsigned char word[8];
  for (int i = 0; i < 8; ++i) word[i] = static_cast<unsigned char>(master >> (8 * i));
  crypto_generichash_update(&st, word, sizeof word);
  crypto_generichash_update(
      &st, reinterpret_cast<const unsigned char*>(label.data()), label.size());
  for (int i = 0; i < 8; ++i) word[i] = static_cast<unsigned char>(tag >> (8 * i));
  crypto_generichash_update(&st, word, sizeof word);
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

void Prg::refill() {
  keystream(buffer_.data(), kBufferWords, block_counter_, key_);
  block_counter_ += kBufferWords * sizeof(std::uint64_t) / 64;
  pos_ = 0;
}

Prg::result_type Prg::operator()() {
  if (pos_ == kBufferWords) refill();
  return buffer_[pos_++];
}

void Prg::fill(std::span<std::uint64_t> out) {
  std::size_t i = 0;
  while (i < out.size() && pos_ < kBufferWords) out[i++] = buffer_[pos_++];
  // Whole 64-byte blocks go straight into the destination.
  const std::size_t rest = out.size() - i;
  const std::size_t direct = rest - rest % 8;
  if (direct > 0) {
    keystream(out.data() + i, direct, block_counter_, key_);
    block_counter_ += direct / 8;
    i += direct;
  }
  while (i < out.size()) out[i++] = (*this)();
}

}  // namespace sharediar::mpc
