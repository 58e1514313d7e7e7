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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sharediar/mpc/ops.h"
#include "sharediar/ring.h"

namespace sharediar::smh {

struct SmhParams {
  int k = 2;            // alphabet size
  double delta = 15.0;  // projection scale: A ~ N(0, 1/delta^2)
  int mpc = 4;          // measurements per coefficient, M = N * mpc

  void validate() const;
};

// Keyed quantized projection Q(x) = floor(A x + w) mod k with A of shape
// M x N (row-major) and w uniform in [0, k).
struct SmhKey {
  int n = 0;
  int m = 0;
  SmhParams params;
  std::uint64_t seed = 0;
  std::vector<double> a;
  std::vector<double> w;

  static SmhKey generate(int n, const SmhParams& params, std::uint64_t seed);
  // A and w rounded to the codec grid.
  SmhKey quantized(const FixedPointCodec& codec) const;

  void save(const std::string& path) const;
  static SmhKey load(const std::string& path);
};

// One symbol in [0, k) per coordinate; k <= 256.
using SmhHash = std::vector<std::uint8_t>;

SmhHash hash_plain(std::span<const double> x, const SmhKey& key);

// Fraction of differing coordinates.
double hamming(const SmhHash& a, const SmhHash& b);

// The key secret-shared by the trusted dealer: A transposed (N x M) so
// segment-major embeddings multiply from the left.
struct SecureKey {
  int n = 0;
  int m = 0;
  int k = 2;
  mpc::Shared at;
  mpc::Shared w;
};

SecureKey share_key(mpc::Protocol& proto, const SmhKey& key, const FixedPointCodec& codec);

// Hashes S secret-shared embeddings (S x N, segment-major). The integer
// part of A x + w is decomposed into bits and only its low log2(k) bits
// are opened, to `server` alone. Requires k to be a power of two.
std::vector<SmhHash> hash_secure(mpc::SecureOps& ops, const SecureKey& key,
                                 const mpc::Shared& embeddings, std::size_t segments,
                                 mpc::PartyId server);

// One line per hash, one character per symbol (0-9 then a-z).
void write_hashes(std::ostream& out, std::span<const SmhHash> hashes);
std::vector<SmhHash> read_hashes(std::istream& in);

}  // namespace sharediar::smh
