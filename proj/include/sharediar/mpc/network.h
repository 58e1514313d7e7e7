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
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <span>
#include <vector>

#include "sharediar/mpc/scheme.h"
#include "sharediar/ring.h"

namespace sharediar::mpc {

// Accounting buckets. Setup covers PRG seed exchange, offline covers
// dealer-supplied correlated randomness, input covers the owners' initial
// sharing, online is everything else.
enum class Phase { kSetup = 0, kOffline, kInput, kOnline };
inline constexpr std::size_t kPhaseCount = 4;

std::string_view phase_name(Phase phase);

enum class MsgKind : std::uint8_t {
  kSeed,     // setup seed material
  kInput,    // summands from an input owner
  kReshare,  // multiplication / AND resharing
  kOpen,     // opening to every party (masked values)
  kOutput,   // opening to a single designated party
};

std::string_view kind_name(MsgKind kind);

struct PartyStats {
  std::uint64_t bytes_sent = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t rounds = 0;  // rounds in which this party sent something
};

struct NetStats {
  std::vector<PartyStats> parties;
  std::uint64_t rounds = 0;  // synchronized communication steps
  std::uint64_t dealer_bytes = 0;
  std::chrono::duration<double> wall_time{0};

  std::uint64_t total_bytes() const;
  std::uint64_t max_party_bytes() const;
  double mean_party_bytes() const;

  NetStats& operator+=(const NetStats& other);
  // Element-wise difference; `earlier` must be a snapshot of the same
  // network taken before this one.
  NetStats since(const NetStats& earlier) const;
};

struct Message {
  std::uint64_t round = 0;
  PartyId src = 0;
  PartyId dst = 0;
  MsgKind kind = MsgKind::kReshare;
  Phase phase = Phase::kOnline;
  RingVec payload;  // 8-byte little-endian words on the wire
};

// In-process network between party state machines. Messages posted during
// a round become visible only after flush(), the round barrier; delivery is
// in party-index order so identical scripts give identical transcripts.
class SimNetwork {
 public:
  explicit SimNetwork(int parties, double latency_ms = 0.0);

  int parties() const { return parties_; }

  Phase phase() const { return phase_; }
  void set_phase(Phase phase);

  void send(PartyId src, PartyId dst, RingVec payload, MsgKind kind);
  void flush();
  // Next delivered message from src to dst. Throws NetworkError if none.
  RingVec recv(PartyId dst, PartyId src);

  // Dealer traffic (the dealer is not a network party).
  void account_dealer(PartyId dst, std::size_t words);

  NetStats stats(Phase phase) const;
  NetStats total() const;
  std::uint64_t round() const { return global_round_; }

  void record_transcript(bool on) { recording_ = on; }
  const std::vector<Message>& transcript() const { return transcript_; }
  void clear_transcript() { transcript_.clear(); }
  // One line per message: round,src,dst,len,hex-payload
  void write_transcript(std::ostream& out) const;

  // Fault injection for tests and audits.
  void set_unresponsive(PartyId party, bool unresponsive);
  void tamper_next(PartyId src, std::size_t bit);

 private:
  void charge_time();

  int parties_;
  double latency_ms_;
  Phase phase_ = Phase::kOnline;
  std::array<NetStats, kPhaseCount> stats_;
  std::uint64_t global_round_ = 0;

  // Posted during the current round, keyed by (src, dst).
  std::map<std::pair<PartyId, PartyId>, std::vector<Message>> pending_;
  // Delivered, keyed by (dst, src).
  std::map<std::pair<PartyId, PartyId>, std::deque<RingVec>> inbox_;

  bool recording_ = false;
  std::vector<Message> transcript_;
  std::vector<bool> unresponsive_;
  std::vector<std::optional<std::size_t>> tamper_;
  std::chrono::steady_clock::time_point phase_start_;
};

// round,src,dst,bytes,hex-payload (little-endian words), one line each.
void write_messages(std::ostream& out, std::span<const Message> messages);

// Scans every 8-byte word that `party` received and returns the number of
// words found in `forbidden`.
std::size_t count_forbidden_words(const std::vector<Message>& transcript,
                                  PartyId party,
                                  const std::unordered_set<std::uint64_t>& forbidden);

}  // namespace sharediar::mpc
