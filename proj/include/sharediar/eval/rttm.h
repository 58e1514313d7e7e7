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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sharediar::eval {

struct RttmTurn {
  std::string recording;
  double onset = 0;
  double duration = 0;
  std::string speaker;

  double end() const { return onset + duration; }
  bool operator==(const RttmTurn&) const = default;
};

// SPEAKER <rec> 1 <onset> <dur> <NA> <NA> <spk> <NA> <NA>. Blank lines and
// lines starting with ';' or '#' are skipped; other record types are
// ignored. Malformed SPEAKER lines raise ParseError with the line number.
std::vector<RttmTurn> parse_rttm(std::string_view text);
std::vector<RttmTurn> read_rttm(const std::string& path);

// Canonical form: times with 3 decimals, "<NA>" fillers.
std::string emit_rttm(const std::vector<RttmTurn>& turns);
void write_rttm(const std::string& path, const std::vector<RttmTurn>& turns);

// Turns of one recording, in input order.
std::vector<RttmTurn> for_recording(const std::vector<RttmTurn>& turns,
                                    const std::string& recording);

}  // namespace sharediar::eval
