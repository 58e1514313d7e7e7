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


#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "sharediar/dsp/audio.h"
#include "sharediar/error.h"

namespace sharediar::dsp {
namespace {

std::uint32_t le32(const unsigned char* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t le16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

void put32(std::ofstream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v), static_cast<char>(v >> 8),
                              static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b.data(), 4);
}
void put16(std::ofstream& out, std::uint16_t v) {
  const std::array<char, 2> b{static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b.data(), 2);
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError(path + ": not a RIFF/WAVE file");
  }
  AudioBuffer audio;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = le32(&bytes[pos + 4]);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw DataError(path + ": truncated chunk");
    if (std::memcmp(&bytes[pos], "fmt ", 4) == 0) {
      if (size < 16) throw DataError(path + ": short fmt chunk");
      const std::uint16_t format = le16(&bytes[body]);
      const std::uint16_t channels = le16(&bytes[body + 2]);
      const std::uint16_t bits = le16(&bytes[body + 14]);
      if (format != 1 || channels != 1 || bits != 16) {
        throw DataError(path + ": only mono 16-bit PCM is supported");
      }
      audio.sample_rate = static_cast<int>(le32(&bytes[body + 4]));
      if (audio.sample_rate <= 0) throw DataError(path + ": bad sample rate");
      have_fmt = true;
    } else if (std::memcmp(&bytes[pos], "data", 4) == 0) {
      if (!have_fmt) throw DataError(path + ": data before fmt");
      audio.samples.resize(size / 2);
      for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(le16(&bytes[body + 2 * i]));
        audio.samples[i] = v / 32768.0;
      }
      return audio;
    }
    pos = body + size + (size & 1);
  }
  throw DataError(path + ": no data chunk");
}

void write_wav(const std::string& path, const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) throw ParameterError("sample rate must be positive");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  out.write("RIFF", 4);
  put32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put32(out, static_cast<std::uint32_t>(audio.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, data_bytes);
  for (double s : audio.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    const auto v = static_cast<std::int16_t>(std::clamp(std::lround(c * 32768.0), -32768L, 32767L));
    put16(out, static_cast<std::uint16_t>(v));
  }
}

}  // namespace sharediar::dsp
