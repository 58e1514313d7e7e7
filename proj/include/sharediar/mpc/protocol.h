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
#include <functional>
#include <map>
#include <utility>
#include <span>
#include <vector>

#include "sharediar/mpc/network.h"
#include "sharediar/mpc/prg.h"
#include "sharediar/mpc/scheme.h"
#include "sharediar/mpc/share.h"

namespace sharediar::mpc {

// Runs every party of one sharing scheme over a SimNetwork.
//
// Construction performs setup: for every key subset the scheme needs
// (neighbour pairs for rss3, triples for rss4) the lowest member samples a
// PRG seed and sends it to the others. Multiplication uses those seeds for
// correlated zero-sharing (rss3) or common masks (rss4) so that exactly one
// ring element per product leaves each rss3 party.
//
// rss4 transmits every online value twice, from two different holders; the
// receiver compares the copies and throws ProtocolAbort on any mismatch.
class Protocol {
 public:
  Protocol(Scheme scheme, SimNetwork& net, std::uint64_t seed);

  const Scheme& scheme() const { return scheme_; }
  SimNetwork& net() { return net_; }
  int parties() const { return scheme_.parties(); }

  // The owner splits x with its private randomness and sends each party its
  // summands (one round).
  Shared input(PartyId owner, std::span<const std::uint64_t> x,
               Domain domain = Domain::kArith);
  // Shares handed out by the trusted offline dealer. Counted as dealer
  // bytes of the current phase.
  Shared deal(std::span<const std::uint64_t> x, Domain domain);

  // Recombines without communication. Debug and test use only.
  RingVec reveal(const Shared& x) const;

  // ---- local operations (no communication) ----
  Shared zeros(std::size_t n, Domain domain) const;
  Shared add(const Shared& a, const Shared& b) const;
  Shared sub(const Shared& a, const Shared& b) const;
  Shared neg(const Shared& a) const;
  // Public constants enter summand 0 (added / XORed).
  Shared add_public(const Shared& a, std::span<const std::uint64_t> c) const;
  Shared add_public(const Shared& a, std::uint64_t c) const;
  // Arithmetic: multiply by a public ring value. Boolean: AND with a mask.
  Shared mul_public(const Shared& a, std::span<const std::uint64_t> c) const;
  Shared mul_public(const Shared& a, std::uint64_t c) const;
  // Boolean shares only: logical shifts of every word.
  Shared shift_left(const Shared& a, int bits) const;
  Shared shift_right(const Shared& a, int bits) const;
  // out[i] = a[index[i]]
  Shared gather(const Shared& a, std::span<const std::uint32_t> index) const;
  // Applies a map that is linear over the share domain to every summand
  // copy. `out_size` is the output length.
  Shared map_linear(const Shared& a, std::size_t out_size,
                    const std::function<void(const RingVec&, RingVec&)>& f) const;
  static Shared concat(std::span<const Shared* const> parts);
  static Shared slice(const Shared& a, std::size_t begin, std::size_t count);

  // ---- interactive operations ----
  // Element-wise product (arithmetic) or AND (boolean). One round.
  Shared mul(const Shared& a, const Shared& b);
  // C = A[p x q] * B[q x r], row-major, arithmetic only. One round; the
  // inner products are accumulated locally before resharing.
  Shared matmul(const Shared& a, const Shared& b, std::size_t p, std::size_t q,
                std::size_t r);
  // rss4 only. For each summand pair (s0, s1), the sum x_s0 + x_s1 is known
  // to the two parties holding both summands; they re-share it in `domain`
  // as (r, v - r) on summands (s0, s1), with r from the key common to all
  // holders of s0. Both knowers send v - r to party s0, which compares the
  // copies. One round for all pairs.
  std::vector<Shared> reshare_pair_sums(const Shared& x,
                                        std::span<const std::pair<int, int>> pairs,
                                        Domain domain);

  // Every party learns x. One round.
  RingVec open(const Shared& x, MsgKind kind = MsgKind::kOpen);
  // Only `target` learns x (returned); one round.
  RingVec open_to(const Shared& x, PartyId target,
                  MsgKind kind = MsgKind::kOutput);

  // Counters for audits.
  std::uint64_t product_calls() const { return product_calls_; }
  std::uint64_t product_elements() const { return product_elements_; }

  // acc += x (*) y for some bilinear (*). An empty function means the
  // element-wise product of the share domain.
  using Bilinear = std::function<void(RingVec& acc, const RingVec& x,
                                      const RingVec& y)>;

 private:
  Shared product(const Shared& a, const Shared& b, std::size_t out_size,
                 const Bilinear& f);
  Shared product_rss3(const Shared& a, const Shared& b, std::size_t out_size,
                      const Bilinear& f);
  Shared product_rss4(const Shared& a, const Shared& b, std::size_t out_size,
                      const Bilinear& f);

  void check_same(const Shared& a, const Shared& b) const;
  Prg& key_prg(PartyId party, unsigned mask);
  void draw(PartyId party, unsigned mask, RingVec& out);

  Scheme scheme_;
  SimNetwork& net_;
  // Per party: PRGs keyed by the bitmask of parties sharing the seed.
  std::vector<std::map<unsigned, Prg>> keys_;
  std::vector<Prg> local_;  // private randomness of each party
  Prg dealer_;
  std::uint64_t product_calls_ = 0;
  std::uint64_t product_elements_ = 0;
};

}  // namespace sharediar::mpc
