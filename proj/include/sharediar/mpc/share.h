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
#include <span>
#include <vector>

#include "sharediar/error.h"
#include "sharediar/mpc/scheme.h"
#include "sharediar/ring.h"

namespace sharediar::mpc {

// Arithmetic shares combine with + in Z_2^64; boolean shares combine with
// XOR on 64-bit words (bit-sliced: bit j of a word is bit j of the value).
enum class Domain { kArith, kBool };

// A secret-shared vector as seen by all parties of the simulation.
// views[p][s] is party p's copy of summand scheme.held(p)[s]. Parties only
// ever touch their own views; redundant copies may diverge under tampering.
struct Shared {
  Domain domain = Domain::kArith;
  std::size_t size = 0;
  std::vector<std::vector<RingVec>> views;
};

// Additive split: n-1 uniform fragments, the last one fixes
// the sum. Works with any 64-bit UniformRandomBitGenerator.
template <class Rng>
std::vector<RingElement> additive_share(RingElement x, int n, Rng& rng) {
  if (n < 1) throw ParameterError("additive_share needs n >= 1");
  std::vector<RingElement> out(static_cast<std::size_t>(n));
  RingElement acc;
  for (int i = 0; i + 1 < n; ++i) {
    out[i] = RingElement(static_cast<std::uint64_t>(rng()));
    acc += out[i];
  }
  out[n - 1] = x - acc;
  return out;
}

RingElement reconstruct(std::span<const RingElement> fragments);

// Splits every element of x into `summands` fragments in the given domain.
template <class Rng>
std::vector<RingVec> split(std::span<const std::uint64_t> x, int summands,
                           Domain domain, Rng& rng) {
  std::vector<RingVec> parts(static_cast<std::size_t>(summands),
                             RingVec(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint64_t acc = 0;
    for (int s = 0; s + 1 < summands; ++s) {
      const auto r = static_cast<std::uint64_t>(rng());
      parts[s][i] = r;
      acc = domain == Domain::kArith ? acc + r : acc ^ r;
    }
    parts[summands - 1][i] = domain == Domain::kArith ? x[i] - acc : x[i] ^ acc;
  }
  return parts;
}

// Distributes summands to their holders.
Shared replicate(const std::vector<RingVec>& summands, const Scheme& scheme,
                 Domain domain);

// Recombines a complete share set. For rss4 every redundant copy of a
// summand is compared first; a disagreement raises InconsistencyError.
RingVec reconstruct(const Shared& x, const Scheme& scheme);

}  // namespace sharediar::mpc
