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

#include "sharediar/smh/smh.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "sharediar/error.h"
#include "sharediar/random.h"
#include "sharediar/simd/kernels.h"

namespace sharediar::smh {
namespace {

constexpr char kMagic[4] = {'S', 'M', 'H', 'K'};
constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";

template <class T>
void put(std::ostream& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char b[sizeof(T)];
  in.read(reinterpret_cast<char*>(b), sizeof(T));
  if (!in) throw DataError("key file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

double floor_mod(double v, int k) {
  const double r = std::fmod(std::floor(v), static_cast<double>(k));
  return r < 0 ? r + k : r;
}

}  // namespace

void SmhParams::validate() const {
  if (k < 2 || k > 256) throw ParameterError("SMH alphabet size must be in [2, 256]");
  if (!(delta > 0)) throw ParameterError("SMH delta must be positive");
  if (mpc < 1) throw ParameterError("SMH measurements per coefficient must be >= 1");
}

SmhKey SmhKey::generate(int n, const SmhParams& params, std::uint64_t seed) {
  params.validate();
  if (n < 1) throw ParameterError("SMH input dimension must be >= 1");
  SmhKey key;
  key.n = n;
  key.m = n * params.mpc;
  key.params = params;
  key.seed = seed;
  std::mt19937_64 rng(seed);
  key.a.resize(static_cast<std::size_t>(key.m) * n);
  for (auto& v : key.a) v = normal(rng, 0.0, 1.0 / params.delta);
  key.w.resize(key.m);
  for (auto& v : key.w) v = uniform(rng, 0.0, params.k);
  return key;
}

SmhKey SmhKey::quantized(const FixedPointCodec& codec) const {
  SmhKey q = *this;
  for (auto& v : q.a) v = codec.quantize(v);
  for (auto& v : q.w) {
    v = codec.quantize(v);
    // Rounding must not push w onto k itself.
    if (v >= params.k) v -= codec.ulp();
  }
  return q;
}

void SmhKey::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out.write(kMagic, 4);
  put<std::uint32_t>(out, n);
  put<std::uint32_t>(out, m);
  put<std::uint32_t>(out, params.k);
  put<double>(out, params.delta);
  put<std::uint32_t>(out, params.mpc);
  put<std::uint64_t>(out, seed);
  for (double v : a) put<double>(out, v);
  for (double v : w) put<double>(out, v);
}

SmhKey SmhKey::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw DataError(path + " is not an SMH key");
  SmhKey key;
  key.n = static_cast<int>(get<std::uint32_t>(in));
  key.m = static_cast<int>(get<std::uint32_t>(in));
  key.params.k = static_cast<int>(get<std::uint32_t>(in));
  key.params.delta = get<double>(in);
  key.params.mpc = static_cast<int>(get<std::uint32_t>(in));
  key.seed = get<std::uint64_t>(in);
  key.params.validate();
  if (key.n < 1 || key.m != key.n * key.params.mpc) throw DataError("inconsistent SMH key header");
  key.a.resize(static_cast<std::size_t>(key.m) * key.n);
  key.w.resize(key.m);
  for (auto& v : key.a) v = get<double>(in);
  for (auto& v : key.w) v = get<double>(in);
  return key;
}

SmhHash hash_plain(std::span<const double> x, const SmhKey& key) {
  if (static_cast<int>(x.size()) != key.n) {
    throw DimensionError("SMH input has dim " + std::to_string(x.size()) + ", key expects " +
                         std::to_string(key.n));
  }
  const auto& k = simd::kernels();
  SmhHash h(key.m);
  for (int i = 0; i < key.m; ++i) {
    const double proj = k.dot(&key.a[static_cast<std::size_t>(i) * key.n], x.data(), key.n);
    h[i] = static_cast<std::uint8_t>(floor_mod(proj + key.w[i], key.params.k));
  }
  return h;
}

double hamming(const SmhHash& a, const SmhHash& b) {
  if (a.size() != b.size()) throw DimensionError("hash lengths differ");
  if (a.empty()) return 0.0;
  return static_cast<double>(simd::kernels().mismatches(a.data(), b.data(), a.size())) /
         static_cast<double>(a.size());
}

SecureKey share_key(mpc::Protocol& proto, const SmhKey& key, const FixedPointCodec& codec) {
  std::vector<double> at(key.a.size());
  for (int i = 0; i < key.m; ++i) {
    for (int j = 0; j < key.n; ++j) {
      at[static_cast<std::size_t>(j) * key.m + i] = key.a[static_cast<std::size_t>(i) * key.n + j];
    }
  }
  // Key distribution happens once, before any data flows.
  mpc::SimNetwork& net = proto.net();
  const mpc::Phase saved = net.phase();
  net.set_phase(mpc::Phase::kSetup);
  SecureKey out{key.n, key.m, key.params.k, proto.deal(codec.encode(at), mpc::Domain::kArith),
                proto.deal(codec.encode(key.w), mpc::Domain::kArith)};
  net.set_phase(saved);
  return out;
}

std::vector<SmhHash> hash_secure(mpc::SecureOps& ops, const SecureKey& key,
                                 const mpc::Shared& embeddings, std::size_t segments,
                                 mpc::PartyId server) {
  if (!std::has_single_bit(static_cast<unsigned>(key.k))) {
    throw ParameterError("secure SMH needs a power-of-two alphabet");
  }
  if (embeddings.size != segments * static_cast<std::size_t>(key.n)) {
    throw DimensionError("embedding matrix does not match the key dimension");
  }
  mpc::Protocol& proto = ops.proto();
  const auto n = static_cast<std::size_t>(key.n), m = static_cast<std::size_t>(key.m);
  mpc::Shared proj = ops.matmul(embeddings, key.at, segments, n, m);
  std::vector<std::uint32_t> idx(segments * m);
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t i = 0; i < m; ++i) idx[s * m + i] = static_cast<std::uint32_t>(i);
  }
  proj = proto.add(proj, proto.gather(key.w, idx));

  // floor() drops the fractional bits; mod k keeps the low integer bits.
  const mpc::Shared bits = ops.a2b(proj);
  const mpc::Shared symbols = proto.mul_public(
      proto.shift_right(bits, ops.codec().frac_bits), static_cast<std::uint64_t>(key.k - 1));
  const RingVec opened = proto.open_to(symbols, server, mpc::MsgKind::kOutput);

  std::vector<SmhHash> out(segments, SmhHash(m));
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t i = 0; i < m; ++i) out[s][i] = static_cast<std::uint8_t>(opened[s * m + i]);
  }
  return out;
}

void write_hashes(std::ostream& out, std::span<const SmhHash> hashes) {
  for (const auto& h : hashes) {
    std::string line(h.size(), '0');
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] >= 36) throw ParameterError("hash symbols above 35 have no digit");
      line[i] = kDigits[h[i]];
    }
    out << line << '\n';
  }
}

std::vector<SmhHash> read_hashes(std::istream& in) {
  std::vector<SmhHash> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    SmhHash h(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c >= '0' && c <= '9') {
        h[i] = static_cast<std::uint8_t>(c - '0');
      } else if (c >= 'a' && c <= 'z') {
        h[i] = static_cast<std::uint8_t>(c - 'a' + 10);
      } else {
        throw ParseError(lineno, "bad hash symbol");
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace sharediar::smh
