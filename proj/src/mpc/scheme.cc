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

#include "sharediar/mpc/scheme.h"

#include <algorithm>
#include <string>

#include "sharediar/error.h"

namespace sharediar::mpc {

Scheme::Scheme(SchemeKind kind, std::vector<std::vector<int>> held)
    : kind_(kind), held_(std::move(held)), holders_(held_.size()) {
  for (PartyId p = 0; p < parties(); ++p) {
    for (int s : held_[p]) holders_[s].push_back(p);
  }
}

Scheme Scheme::additive(int parties) {
  if (parties < 1 || parties > 8) {
    throw ParameterError("additive sharing supports 1..8 parties, got " +
                         std::to_string(parties));
  }
  std::vector<std::vector<int>> held(parties);
  for (int p = 0; p < parties; ++p) held[p] = {p};
  return Scheme(SchemeKind::kAdditive, std::move(held));
}

Scheme Scheme::rss3() {
  return Scheme(SchemeKind::kRss3, {{0, 1}, {1, 2}, {2, 0}});
}

Scheme Scheme::rss4() {
  return Scheme(SchemeKind::kRss4, {{1, 2, 3}, {2, 3, 0}, {3, 0, 1}, {0, 1, 2}});
}

Scheme Scheme::from_name(std::string_view name) {
  if (name == "rss3") return rss3();
  if (name == "rss4") return rss4();
  if (name == "additive") return additive(3);
  throw ParameterError("unknown sharing scheme '" + std::string(name) + "'");
}

std::string_view Scheme::name() const {
  switch (kind_) {
    case SchemeKind::kAdditive:
      return "additive";
    case SchemeKind::kRss3:
      return "rss3";
    case SchemeKind::kRss4:
      return "rss4";
  }
  return "unknown";
}

int Scheme::slot(PartyId p, int summand) const {
  const auto& h = held_[p];
  const auto it = std::find(h.begin(), h.end(), summand);
  return it == h.end() ? -1 : static_cast<int>(it - h.begin());
}

}  // namespace sharediar::mpc
