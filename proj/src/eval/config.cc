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


#include "sharediar/eval/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sharediar/error.h"

namespace sharediar::eval {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParameterError("bad value for " + key + ": '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParameterError("bad boolean for " + key + ": '" + v + "'");
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(lineno, "empty key");
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

KeyValues apply_config(const KeyValues& values, diar::PipelineConfig& c) {
  KeyValues rest;
  std::string preset;
  for (const auto& [k, v] : values) {
    if (k == "codec.frac_bits") c.codec.frac_bits = parse_number<int>(k, v);
    else if (k == "codec.int_bits") c.codec.int_bits = parse_number<int>(k, v);
    else if (k == "trunc.value_bits") c.trunc.value_bits = parse_number<int>(k, v);
    else if (k == "trunc.stat_sec") c.trunc.stat_sec = parse_number<int>(k, v);
    else if (k == "tdnn.preset") preset = v;
    else if (k == "features.n_coeffs") c.mfcc.n_coeffs = parse_number<int>(k, v);
    else if (k == "features.cmn") c.cmn = parse_bool(k, v);
    else if (k == "segment.window") c.segments.window = parse_number<double>(k, v);
    else if (k == "segment.shift") c.segments.shift = parse_number<double>(k, v);
    else if (k == "smh.k") c.smh.k = parse_number<int>(k, v);
    else if (k == "smh.delta") c.smh.delta = parse_number<double>(k, v);
    else if (k == "smh.mpc") c.smh.mpc = parse_number<int>(k, v);
    else if (k == "scheme") c.scheme = v;
    else if (k == "seed") c.seed = parse_number<std::uint64_t>(k, v);
    else if (k == "sub_batch") c.sub_batch = parse_number<std::size_t>(k, v);
    else rest[k] = v;
  }
  if (!preset.empty() || values.count("features.n_coeffs")) {
    c.tdnn = embed::TdnnConfig::from_name(preset.empty() ? "desk" : preset, c.mfcc.n_coeffs);
  }
  c.codec.validate();
  c.trunc.validate();
  c.segments.validate();
  c.smh.validate();
  return rest;
}

}  // namespace sharediar::eval
