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

#include "sharediar/mpc/network.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "sharediar/error.h"

namespace sharediar::mpc {

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kSetup:
      return "setup";
    case Phase::kOffline:
      return "offline";
    case Phase::kInput:
      return "input";
    case Phase::kOnline:
      return "online";
  }
  return "unknown";
}

std::string_view kind_name(MsgKind kind) {
  switch (kind) {
    case MsgKind::kSeed:
      return "seed";
    case MsgKind::kInput:
      return "input";
    case MsgKind::kReshare:
      return "reshare";
    case MsgKind::kOpen:
      return "open";
    case MsgKind::kOutput:
      return "output";
  }
  return "unknown";
}

std::uint64_t NetStats::total_bytes() const {
  std::uint64_t sum = 0;
  for (const auto& p : parties) sum += p.bytes_sent;
  return sum;
}

std::uint64_t NetStats::max_party_bytes() const {
  std::uint64_t best = 0;
  for (const auto& p : parties) best = std::max(best, p.bytes_sent);
  return best;
}

double NetStats::mean_party_bytes() const {
  if (parties.empty()) return 0.0;
  return static_cast<double>(total_bytes()) / static_cast<double>(parties.size());
}

NetStats& NetStats::operator+=(const NetStats& other) {
  if (parties.size() < other.parties.size()) parties.resize(other.parties.size());
  for (std::size_t i = 0; i < other.parties.size(); ++i) {
    parties[i].bytes_sent += other.parties[i].bytes_sent;
    parties[i].messages_sent += other.parties[i].messages_sent;
    parties[i].rounds += other.parties[i].rounds;
  }
  rounds += other.rounds;
  dealer_bytes += other.dealer_bytes;
  wall_time += other.wall_time;
  return *this;
}

NetStats NetStats::since(const NetStats& earlier) const {
  NetStats out = *this;
  for (std::size_t i = 0; i < out.parties.size() && i < earlier.parties.size(); ++i) {
    out.parties[i].bytes_sent -= earlier.parties[i].bytes_sent;
    out.parties[i].messages_sent -= earlier.parties[i].messages_sent;
    out.parties[i].rounds -= earlier.parties[i].rounds;
  }
  out.rounds -= earlier.rounds;
  out.dealer_bytes -= earlier.dealer_bytes;
  out.wall_time -= earlier.wall_time;
  return out;
}

SimNetwork::SimNetwork(int parties, double latency_ms)
    : parties_(parties),
      latency_ms_(latency_ms),
      unresponsive_(parties, false),
      tamper_(parties),
      phase_start_(std::chrono::steady_clock::now()) {
  if (parties < 1) throw ParameterError("network needs at least one party");
  for (auto& s : stats_) s.parties.resize(parties);
}

void SimNetwork::charge_time() {
  const auto now = std::chrono::steady_clock::now();
  stats_[static_cast<std::size_t>(phase_)].wall_time += now - phase_start_;
  phase_start_ = now;
}

void SimNetwork::set_phase(Phase phase) {
  charge_time();
  phase_ = phase;
}

void SimNetwork::send(PartyId src, PartyId dst, RingVec payload, MsgKind kind) {
  if (src < 0 || src >= parties_ || dst < 0 || dst >= parties_ || src == dst) {
    throw ParameterError("bad message route " + std::to_string(src) + "->" +
                         std::to_string(dst));
  }
  if (unresponsive_[src]) return;
  if (tamper_[src] && !payload.empty()) {
    const std::size_t bit = *tamper_[src] % (payload.size() * 64);
    payload[bit / 64] ^= std::uint64_t{1} << (bit % 64);
    tamper_[src].reset();
  }
  auto& st = stats_[static_cast<std::size_t>(phase_)].parties[src];
  st.bytes_sent += payload.size() * sizeof(std::uint64_t);
  st.messages_sent += 1;
  pending_[{src, dst}].push_back(
      Message{global_round_, src, dst, kind, phase_, std::move(payload)});
}

void SimNetwork::flush() {
  if (pending_.empty()) return;
  auto& st = stats_[static_cast<std::size_t>(phase_)];
  st.rounds += 1;
  std::vector<bool> sent(parties_, false);
  // std::map iterates (src, dst) in ascending order.
  for (auto& [route, messages] : pending_) {
    sent[route.first] = true;
    for (auto& m : messages) {
      if (recording_) transcript_.push_back(m);
      inbox_[{route.second, route.first}].push_back(std::move(m.payload));
    }
  }
  for (PartyId p = 0; p < parties_; ++p) {
    if (sent[p]) st.parties[p].rounds += 1;
  }
  pending_.clear();
  ++global_round_;
}

RingVec SimNetwork::recv(PartyId dst, PartyId src) {
  auto it = inbox_.find({dst, src});
  if (it == inbox_.end() || it->second.empty()) {
    if (unresponsive_[src]) {
      throw NetworkError("party " + std::to_string(src) + " is unresponsive");
    }
    throw NetworkError("no message from party " + std::to_string(src) +
                       " to party " + std::to_string(dst));
  }
  RingVec out = std::move(it->second.front());
  it->second.pop_front();
  if (it->second.empty()) inbox_.erase(it);
  return out;
}

void SimNetwork::account_dealer(PartyId, std::size_t words) {
  stats_[static_cast<std::size_t>(phase_)].dealer_bytes +=
      words * sizeof(std::uint64_t);
}

NetStats SimNetwork::stats(Phase phase) const {
  NetStats out = stats_[static_cast<std::size_t>(phase)];
  if (phase == phase_) {
    out.wall_time += std::chrono::steady_clock::now() - phase_start_;
  }
  out.wall_time += std::chrono::duration<double>(latency_ms_ * 1e-3 *
                                                 static_cast<double>(out.rounds));
  return out;
}

NetStats SimNetwork::total() const {
  NetStats out;
  out.parties.resize(parties_);
  for (std::size_t i = 0; i < kPhaseCount; ++i) out += stats(static_cast<Phase>(i));
  return out;
}

void SimNetwork::write_transcript(std::ostream& out) const { write_messages(out, transcript_); }

void write_messages(std::ostream& out, std::span<const Message> messages) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (const auto& m : messages) {
    hex.clear();
    hex.reserve(m.payload.size() * 16);
    for (std::uint64_t w : m.payload) {
      for (int b = 0; b < 8; ++b) {
        const auto byte = static_cast<unsigned>((w >> (8 * b)) & 0xff);
        hex.push_back(kHex[byte >> 4]);
        hex.push_back(kHex[byte & 0xf]);
      }
    }
    out << m.round << ',' << m.src << ',' << m.dst << ','
        << m.payload.size() * sizeof(std::uint64_t) << ',' << hex << '\n';
  }
}

void SimNetwork::set_unresponsive(PartyId party, bool unresponsive) {
  unresponsive_.at(party) = unresponsive;
}

void SimNetwork::tamper_next(PartyId src, std::size_t bit) {
  tamper_.at(src) = bit;
}

std::size_t count_forbidden_words(const std::vector<Message>& transcript,
                                  PartyId party,
                                  const std::unordered_set<std::uint64_t>& forbidden) {
  std::size_t hits = 0;
  for (const auto& m : transcript) {
    if (m.dst != party) continue;
    for (std::uint64_t w : m.payload) hits += forbidden.count(w);
  }
  return hits;
}

}  // namespace sharediar::mpc
