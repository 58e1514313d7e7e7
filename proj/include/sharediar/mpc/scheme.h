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

#include <string_view>
#include <vector>

namespace sharediar::mpc {

using PartyId = int;

enum class SchemeKind { kAdditive, kRss3, kRss4 };

// Which additive summands each party stores.
//   additive(n): party i holds {i}
//   rss3:        party i holds {i, i+1 mod 3}
//   rss4:        party i holds every summand except i
class Scheme {
 public:
  static Scheme additive(int parties);
  static Scheme rss3();
  static Scheme rss4();
  // "additive", "rss3" or "rss4"; additive uses 3 parties.
  static Scheme from_name(std::string_view name);

  SchemeKind kind() const { return kind_; }
  std::string_view name() const;
  int parties() const { return static_cast<int>(held_.size()); }
  int summands() const { return parties(); }
  bool replicated() const { return kind_ != SchemeKind::kAdditive; }

  const std::vector<int>& held(PartyId p) const { return held_[p]; }
  const std::vector<PartyId>& holders(int summand) const {
    return holders_[summand];
  }
  // Position of `summand` in held(p), or -1.
  int slot(PartyId p, int summand) const;

 private:
  Scheme(SchemeKind kind, std::vector<std::vector<int>> held);

  SchemeKind kind_;
  std::vector<std::vector<int>> held_;
  std::vector<std::vector<PartyId>> holders_;
};

}  // namespace sharediar::mpc
