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


#include "sharediar/eval/rttm.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sharediar/error.h"

namespace sharediar::eval {
namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

double number(std::string_view s, std::size_t lineno, const char* what) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(lineno, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<RttmTurn> parse_rttm(std::string_view text) {
  std::vector<RttmTurn> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    const auto f = fields(line);
    if (f.empty() || f[0].front() == ';' || f[0].front() == '#') continue;
    if (f[0] != "SPEAKER") continue;
    if (f.size() < 8) throw ParseError(lineno, "SPEAKER line needs at least 8 fields");
    RttmTurn t;
    t.recording = std::string(f[1]);
    t.onset = number(f[3], lineno, "onset");
    t.duration = number(f[4], lineno, "duration");
    t.speaker = std::string(f[7]);
    if (t.onset < 0) throw ParseError(lineno, "negative onset");
    if (t.duration <= 0) throw ParseError(lineno, "non-positive duration");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<RttmTurn> read_rttm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rttm(ss.str());
}

std::string emit_rttm(const std::vector<RttmTurn>& turns) {
  std::string out;
  char buf[64];
  for (const auto& t : turns) {
    out += "SPEAKER " + t.recording + " 1 ";
    std::snprintf(buf, sizeof buf, "%.3f %.3f", t.onset, t.duration);
    out += buf;
    out += " <NA> <NA> " + t.speaker + " <NA> <NA>\n";
  }
  return out;
}

void write_rttm(const std::string& path, const std::vector<RttmTurn>& turns) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << emit_rttm(turns);
}

std::vector<RttmTurn> for_recording(const std::vector<RttmTurn>& turns, const std::string& recording) {
  std::vector<RttmTurn> out;
  for (const auto& t : turns) {
    if (t.recording == recording) out.push_back(t);
  }
  return out;
}

}  // namespace sharediar::eval
