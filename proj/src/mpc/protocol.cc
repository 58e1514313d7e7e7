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

#include "sharediar/mpc/protocol.h"

#include <algorithm>
#include <string>

#include "sharediar/error.h"
#include "sharediar/simd/kernels.h"

namespace sharediar::mpc {
namespace {

constexpr std::size_t kSeedWords = sizeof(Seed) / sizeof(std::uint64_t);

unsigned all_but(int parties, PartyId p) {
  return ((1u << parties) - 1) & ~(1u << p);
}

bool in_mask(unsigned mask, PartyId p) { return (mask >> p) & 1u; }

PartyId lowest(unsigned mask) {
  PartyId p = 0;
  while (!in_mask(mask, p)) ++p;
  return p;
}

void combine(Domain d, RingVec& acc, const RingVec& x) {
  const auto& k = simd::kernels();
  if (d == Domain::kArith) {
    k.add(acc.data(), acc.data(), x.data(), acc.size());
  } else {
    k.bit_xor(acc.data(), acc.data(), x.data(), acc.size());
  }
}

void uncombine(Domain d, RingVec& acc, const RingVec& x) {
  const auto& k = simd::kernels();
  if (d == Domain::kArith) {
    k.sub(acc.data(), acc.data(), x.data(), acc.size());
  } else {
    k.bit_xor(acc.data(), acc.data(), x.data(), acc.size());
  }
}

RingVec to_words(const Seed& s) {
  RingVec out(kSeedWords);
  for (std::size_t i = 0; i < kSeedWords; ++i) {
    std::uint64_t w = 0;
    for (int b = 0; b < 8; ++b) w |= std::uint64_t{s[8 * i + b]} << (8 * b);
    out[i] = w;
  }
  return out;
}

Seed from_words(const RingVec& w) {
  Seed s{};
  for (std::size_t i = 0; i < kSeedWords; ++i) {
    for (int b = 0; b < 8; ++b) s[8 * i + b] = static_cast<std::uint8_t>(w[i] >> (8 * b));
  }
  return s;
}

Protocol::Bilinear elementwise_product(Domain d) {
  return [d](RingVec& acc, const RingVec& x, const RingVec& y) {
    const auto& k = simd::kernels();
    RingVec t(x.size());
    if (d == Domain::kArith) {
      k.mul(t.data(), x.data(), y.data(), t.size());
      k.add(acc.data(), acc.data(), t.data(), t.size());
    } else {
      k.bit_and(t.data(), x.data(), y.data(), t.size());
      k.bit_xor(acc.data(), acc.data(), t.data(), t.size());
    }
  };
}

}  // namespace

RingElement reconstruct(std::span<const RingElement> fragments) {
  RingElement acc;
  for (RingElement f : fragments) acc += f;
  return acc;
}

Shared replicate(const std::vector<RingVec>& summands, const Scheme& scheme,
                 Domain domain) {
  if (static_cast<int>(summands.size()) != scheme.summands()) {
    throw DimensionError("wrong number of summands for scheme");
  }
  Shared out;
  out.domain = domain;
  out.size = summands.empty() ? 0 : summands[0].size();
  out.views.resize(scheme.parties());
  for (PartyId p = 0; p < scheme.parties(); ++p) {
    for (int s : scheme.held(p)) out.views[p].push_back(summands[s]);
  }
  return out;
}

RingVec reconstruct(const Shared& x, const Scheme& scheme) {
  RingVec acc(x.size, 0);
  for (int s = 0; s < scheme.summands(); ++s) {
    const auto& holders = scheme.holders(s);
    const PartyId first = holders.front();
    const RingVec& copy = x.views[first][scheme.slot(first, s)];
    if (scheme.kind() == SchemeKind::kRss4) {
      for (PartyId h : holders) {
        if (x.views[h][scheme.slot(h, s)] != copy) {
          throw InconsistencyError("redundant copies of summand " +
                                   std::to_string(s) + " disagree");
        }
      }
    }
    combine(x.domain, acc, copy);
  }
  return acc;
}

Protocol::Protocol(Scheme scheme, SimNetwork& net, std::uint64_t seed)
    : scheme_(std::move(scheme)),
      net_(net),
      keys_(scheme_.parties()),
      dealer_(Prg::derive(seed, "dealer")) {
  if (net_.parties() != scheme_.parties()) {
    throw ParameterError("network and scheme disagree on party count");
  }
  const int n = parties();
  for (PartyId p = 0; p < n; ++p) local_.emplace_back(Prg::derive(seed, "local", p));

  std::vector<unsigned> masks;
  if (scheme_.kind() == SchemeKind::kRss3) {
    for (PartyId i = 0; i < 3; ++i) masks.push_back((1u << i) | (1u << ((i + 1) % 3)));
  } else if (scheme_.kind() == SchemeKind::kRss4) {
    for (PartyId j = 0; j < 4; ++j) masks.push_back(all_but(4, j));
  }

  const Phase saved = net_.phase();
  net_.set_phase(Phase::kSetup);
  for (unsigned mask : masks) {
    const PartyId owner = lowest(mask);
    const Seed s = Prg::derive(seed, "key", mask);
    keys_[owner].emplace(mask, Prg(s));
    for (PartyId p = 0; p < n; ++p) {
      if (p != owner && in_mask(mask, p)) net_.send(owner, p, to_words(s), MsgKind::kSeed);
    }
  }
  net_.flush();
  for (unsigned mask : masks) {
    const PartyId owner = lowest(mask);
    for (PartyId p = 0; p < n; ++p) {
      if (p != owner && in_mask(mask, p)) {
        keys_[p].emplace(mask, Prg(from_words(net_.recv(p, owner))));
      }
    }
  }
  net_.set_phase(saved);
}

Prg& Protocol::key_prg(PartyId party, unsigned mask) {
  auto it = keys_[party].find(mask);
  if (it == keys_[party].end()) throw Error("party lacks requested PRG key");
  return it->second;
}

void Protocol::draw(PartyId party, unsigned mask, RingVec& out) {
  key_prg(party, mask).fill(out);
}

void Protocol::check_same(const Shared& a, const Shared& b) const {
  if (a.size != b.size) {
    throw DimensionError("share sizes differ: " + std::to_string(a.size) +
                         " vs " + std::to_string(b.size));
  }
  if (a.domain != b.domain) throw DimensionError("share domains differ");
}

Shared Protocol::input(PartyId owner, std::span<const std::uint64_t> x,
                       Domain domain) {
  const auto parts = split(x, scheme_.summands(), domain, local_[owner]);
  Shared out;
  out.domain = domain;
  out.size = x.size();
  out.views.resize(parties());
  for (PartyId p = 0; p < parties(); ++p) {
    if (p == owner) continue;
    RingVec msg;
    msg.reserve(x.size() * scheme_.held(p).size());
    for (int s : scheme_.held(p)) msg.insert(msg.end(), parts[s].begin(), parts[s].end());
    net_.send(owner, p, std::move(msg), MsgKind::kInput);
  }
  net_.flush();
  for (PartyId p = 0; p < parties(); ++p) {
    const auto& held = scheme_.held(p);
    if (p == owner) {
      for (int s : held) out.views[p].push_back(parts[s]);
      continue;
    }
    const RingVec msg = net_.recv(p, owner);
    if (msg.size() != x.size() * held.size()) throw NetworkError("short input message");
    for (std::size_t k = 0; k < held.size(); ++k) {
      out.views[p].emplace_back(msg.begin() + k * x.size(),
                                msg.begin() + (k + 1) * x.size());
    }
  }
  return out;
}

Shared Protocol::deal(std::span<const std::uint64_t> x, Domain domain) {
  const auto parts = split(x, scheme_.summands(), domain, dealer_);
  for (PartyId p = 0; p < parties(); ++p) {
    net_.account_dealer(p, x.size() * scheme_.held(p).size());
  }
  return replicate(parts, scheme_, domain);
}

RingVec Protocol::reveal(const Shared& x) const { return reconstruct(x, scheme_); }

Shared Protocol::zeros(std::size_t n, Domain domain) const {
  Shared out;
  out.domain = domain;
  out.size = n;
  out.views.resize(parties());
  for (PartyId p = 0; p < parties(); ++p) {
    out.views[p].assign(scheme_.held(p).size(), RingVec(n, 0));
  }
  return out;
}

Shared Protocol::add(const Shared& a, const Shared& b) const {
  check_same(a, b);
  Shared out = a;
  for (PartyId p = 0; p < parties(); ++p) {
    for (std::size_t s = 0; s < out.views[p].size(); ++s) {
      combine(a.domain, out.views[p][s], b.views[p][s]);
    }
  }
  return out;
}

Shared Protocol::sub(const Shared& a, const Shared& b) const {
  check_same(a, b);
  Shared out = a;
  for (PartyId p = 0; p < parties(); ++p) {
    for (std::size_t s = 0; s < out.views[p].size(); ++s) {
      uncombine(a.domain, out.views[p][s], b.views[p][s]);
    }
  }
  return out;
}

Shared Protocol::neg(const Shared& a) const {
  if (a.domain == Domain::kBool) return a;
  Shared out = a;
  for (auto& view : out.views) {
    for (auto& v : view) {
      for (auto& e : v) e = 0 - e;
    }
  }
  return out;
}

Shared Protocol::add_public(const Shared& a, std::span<const std::uint64_t> c) const {
  if (c.size() != a.size) throw DimensionError("public operand size mismatch");
  Shared out = a;
  for (PartyId p = 0; p < parties(); ++p) {
    const int s = scheme_.slot(p, 0);
    if (s < 0) continue;
    RingVec& v = out.views[p][s];
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = a.domain == Domain::kArith ? v[i] + c[i] : v[i] ^ c[i];
    }
  }
  return out;
}

Shared Protocol::add_public(const Shared& a, std::uint64_t c) const {
  return add_public(a, RingVec(a.size, c));
}

Shared Protocol::mul_public(const Shared& a, std::span<const std::uint64_t> c) const {
  if (c.size() != a.size) throw DimensionError("public operand size mismatch");
  const auto& k = simd::kernels();
  Shared out = a;
  for (auto& view : out.views) {
    for (auto& v : view) {
      if (a.domain == Domain::kArith) {
        k.mul(v.data(), v.data(), c.data(), v.size());
      } else {
        k.bit_and(v.data(), v.data(), c.data(), v.size());
      }
    }
  }
  return out;
}

Shared Protocol::mul_public(const Shared& a, std::uint64_t c) const {
  Shared out = a;
  for (auto& view : out.views) {
    for (auto& v : view) {
      for (auto& e : v) e = a.domain == Domain::kArith ? e * c : e & c;
    }
  }
  return out;
}

Shared Protocol::shift_left(const Shared& a, int bits) const {
  if (a.domain != Domain::kBool) throw DomainError("shift on arithmetic share");
  Shared out = a;
  for (auto& view : out.views) {
    for (auto& v : view) {
      for (auto& e : v) e = bits >= 64 ? 0 : e << bits;
    }
  }
  return out;
}

Shared Protocol::shift_right(const Shared& a, int bits) const {
  if (a.domain != Domain::kBool) throw DomainError("shift on arithmetic share");
  Shared out = a;
  for (auto& view : out.views) {
    for (auto& v : view) {
      for (auto& e : v) e = bits >= 64 ? 0 : e >> bits;
    }
  }
  return out;
}

Shared Protocol::gather(const Shared& a, std::span<const std::uint32_t> index) const {
  Shared out;
  out.domain = a.domain;
  out.size = index.size();
  out.views.resize(parties());
  for (PartyId p = 0; p < parties(); ++p) {
    for (const auto& v : a.views[p]) {
      RingVec g(index.size());
      for (std::size_t i = 0; i < index.size(); ++i) g[i] = v[index[i]];
      out.views[p].push_back(std::move(g));
    }
  }
  return out;
}

Shared Protocol::map_linear(
    const Shared& a, std::size_t out_size,
    const std::function<void(const RingVec&, RingVec&)>& f) const {
  Shared out;
  out.domain = a.domain;
  out.size = out_size;
  out.views.resize(parties());
  for (PartyId p = 0; p < parties(); ++p) {
    for (const auto& v : a.views[p]) {
      RingVec r(out_size, 0);
      f(v, r);
      out.views[p].push_back(std::move(r));
    }
  }
  return out;
}

Shared Protocol::concat(std::span<const Shared* const> parts) {
  if (parts.empty()) return {};
  Shared out;
  out.domain = parts[0]->domain;
  out.views.resize(parts[0]->views.size());
  for (const Shared* s : parts) {
    if (s->domain != out.domain) throw DimensionError("concat across domains");
    out.size += s->size;
  }
  for (std::size_t p = 0; p < out.views.size(); ++p) {
    out.views[p].resize(parts[0]->views[p].size());
    for (std::size_t k = 0; k < out.views[p].size(); ++k) {
      RingVec& dst = out.views[p][k];
      dst.reserve(out.size);
      for (const Shared* s : parts) {
        dst.insert(dst.end(), s->views[p][k].begin(), s->views[p][k].end());
      }
    }
  }
  return out;
}

Shared Protocol::slice(const Shared& a, std::size_t begin, std::size_t count) {
  if (begin + count > a.size) throw DimensionError("slice out of range");
  Shared out;
  out.domain = a.domain;
  out.size = count;
  out.views.resize(a.views.size());
  for (std::size_t p = 0; p < a.views.size(); ++p) {
    for (const auto& v : a.views[p]) {
      out.views[p].emplace_back(v.begin() + begin, v.begin() + begin + count);
    }
  }
  return out;
}

Shared Protocol::mul(const Shared& a, const Shared& b) {
  check_same(a, b);
  return product(a, b, a.size, nullptr);
}

Shared Protocol::matmul(const Shared& a, const Shared& b, std::size_t p,
                        std::size_t q, std::size_t r) {
  if (a.domain != Domain::kArith || b.domain != Domain::kArith) {
    throw DomainError("matmul needs arithmetic shares");
  }
  if (a.size != p * q || b.size != q * r) {
    throw DimensionError("matmul operand shapes do not match " +
                         std::to_string(p) + "x" + std::to_string(q) + "x" +
                         std::to_string(r));
  }
  return product(a, b, p * r, [p, q, r](RingVec& acc, const RingVec& x, const RingVec& y) {
    simd::ring_matmul_acc(acc.data(), x.data(), y.data(), p, q, r);
  });
}

Shared Protocol::product(const Shared& a, const Shared& b, std::size_t out_size,
                         const Bilinear& f) {
  ++product_calls_;
  product_elements_ += out_size;
  switch (scheme_.kind()) {
    case SchemeKind::kRss3:
      return product_rss3(a, b, out_size, f);
    case SchemeKind::kRss4:
      return product_rss4(a, b, out_size, f);
    case SchemeKind::kAdditive:
      break;
  }
  throw ParameterError("multiplication needs a replicated scheme");
}

// Party i holds (x_i, x_{i+1}). It computes
//   z_i = x_i y_i + x_i y_{i+1} + x_{i+1} y_i + alpha_i
// with alpha_i = F(k_i) - F(k_{i-1}) summing to zero, and sends z_i to
// party i-1, which then holds (z_{i-1}, z_i).
Shared Protocol::product_rss3(const Shared& a, const Shared& b,
                              std::size_t out_size, const Bilinear& f) {
  const Domain d = a.domain;
  const auto& k = simd::kernels();
  const bool elementwise = !f;
  std::vector<RingVec> z(3, RingVec(out_size, 0));
  for (PartyId i = 0; i < 3; ++i) {
    const auto& x = a.views[i];
    const auto& y = b.views[i];
    RingVec& zi = z[i];
    if (elementwise && d == Domain::kArith) {
      k.cross_mul(zi.data(), x[0].data(), x[1].data(), y[0].data(), y[1].data(), out_size);
    } else if (elementwise) {
      k.cross_and(zi.data(), x[0].data(), x[1].data(), y[0].data(), y[1].data(), out_size);
    } else {
      RingVec ysum = y[0];
      combine(d, ysum, y[1]);
      f(zi, x[0], ysum);
      f(zi, x[1], y[0]);
    }
    RingVec mask(out_size);
    draw(i, (1u << i) | (1u << ((i + 1) % 3)), mask);
    combine(d, zi, mask);
    draw(i, (1u << ((i + 2) % 3)) | (1u << i), mask);
    uncombine(d, zi, mask);
    net_.send(i, (i + 2) % 3, zi, MsgKind::kReshare);
  }
  net_.flush();
  Shared out;
  out.domain = d;
  out.size = out_size;
  out.views.resize(3);
  for (PartyId i = 0; i < 3; ++i) {
    RingVec next = net_.recv(i, (i + 1) % 3);
    if (next.size() != out_size) throw NetworkError("short reshare message");
    out.views[i].push_back(std::move(z[i]));
    out.views[i].push_back(std::move(next));
  }
  return out;
}

// New summand c_m starts as x_m y_m at all its holders. For each pair
// j < l the two parties outside {j, l} know v = x_j y_l + x_l y_j; with a
// mask s from the key of parties != j they add s to c_j and v - s to c_l,
// and both send v - s to party j, which compares the copies.
Shared Protocol::product_rss4(const Shared& a, const Shared& b,
                              std::size_t out_size, const Bilinear& bilinear) {
  const Domain d = a.domain;
  const Bilinear f = bilinear ? bilinear : elementwise_product(d);
  // c[p][slot] mirrors held(p).
  std::vector<std::vector<RingVec>> c(4);
  for (PartyId p = 0; p < 4; ++p) {
    const auto& held = scheme_.held(p);
    for (std::size_t s = 0; s < held.size(); ++s) {
      RingVec acc(out_size, 0);
      f(acc, a.views[p][s], b.views[p][s]);
      c[p].push_back(std::move(acc));
    }
  }
  // Outgoing payloads per (src, dst), in pair order.
  std::map<std::pair<PartyId, PartyId>, RingVec> outbox;
  RingVec s(out_size);
  for (int j = 0; j < 4; ++j) {
    for (int l = j + 1; l < 4; ++l) {
      const unsigned key = all_but(4, j);
      for (PartyId p = 0; p < 4; ++p) {
        if (p == j) continue;
        draw(p, key, s);
        combine(d, c[p][scheme_.slot(p, j)], s);
        if (p == l) continue;
        // p is one of the two parties outside {j, l}.
        RingVec v(out_size, 0);
        f(v, a.views[p][scheme_.slot(p, j)], b.views[p][scheme_.slot(p, l)]);
        f(v, a.views[p][scheme_.slot(p, l)], b.views[p][scheme_.slot(p, j)]);
        uncombine(d, v, s);
        combine(d, c[p][scheme_.slot(p, l)], v);
        auto& msg = outbox[{p, j}];
        msg.insert(msg.end(), v.begin(), v.end());
      }
    }
  }
  for (auto& [route, payload] : outbox) {
    net_.send(route.first, route.second, std::move(payload), MsgKind::kReshare);
  }
  net_.flush();
  for (PartyId j = 0; j < 4; ++j) {
    // Senders to j, and the l's they covered, in the same pair order.
    std::map<PartyId, RingVec> got;
    std::map<PartyId, std::size_t> cursor;
    for (int l = j + 1; l < 4; ++l) {
      for (PartyId p = 0; p < 4; ++p) {
        if (p != j && p != l && !got.count(p)) {
          got[p] = net_.recv(j, p);
          cursor[p] = 0;
        }
      }
    }
    for (int l = j + 1; l < 4; ++l) {
      const RingVec* first = nullptr;
      std::size_t first_off = 0;
      for (PartyId p = 0; p < 4; ++p) {
        if (p == j || p == l) continue;
        const std::size_t off = cursor[p];
        if (got[p].size() < off + out_size) throw NetworkError("short reshare message");
        if (first == nullptr) {
          first = &got[p];
          first_off = off;
        } else if (!std::equal(first->begin() + first_off,
                               first->begin() + first_off + out_size,
                               got[p].begin() + off)) {
          throw ProtocolAbort("party " + std::to_string(j) +
                              " received conflicting reshare copies");
        }
        cursor[p] += out_size;
      }
      RingVec v(first->begin() + first_off, first->begin() + first_off + out_size);
      combine(d, c[j][scheme_.slot(j, l)], v);
    }
  }
  Shared out;
  out.domain = d;
  out.size = out_size;
  out.views = std::move(c);
  return out;
}

std::vector<Shared> Protocol::reshare_pair_sums(const Shared& x,
                                                std::span<const std::pair<int, int>> pairs,
                                                Domain domain) {
  if (scheme_.kind() != SchemeKind::kRss4) {
    throw ParameterError("reshare_pair_sums needs the rss4 scheme");
  }
  if (x.domain != Domain::kArith) throw DomainError("reshare_pair_sums takes arithmetic shares");
  const std::size_t n = x.size;
  std::vector<Shared> out;
  std::map<std::pair<PartyId, PartyId>, RingVec> outbox;
  RingVec r(n);
  for (auto [s0, s1] : pairs) {
    if (s0 == s1 || s0 < 0 || s1 < 0 || s0 > 3 || s1 > 3) {
      throw ParameterError("bad summand pair");
    }
    Shared sh = zeros(n, domain);
    const unsigned key = all_but(4, s0);
    for (PartyId p = 0; p < 4; ++p) {
      if (p == s0) continue;
      draw(p, key, r);
      sh.views[p][scheme_.slot(p, s0)] = r;
      if (p == s1) continue;
      // p knows both summands.
      RingVec v = x.views[p][scheme_.slot(p, s0)];
      combine(Domain::kArith, v, x.views[p][scheme_.slot(p, s1)]);
      uncombine(domain, v, r);
      auto& msg = outbox[{p, s0}];
      msg.insert(msg.end(), v.begin(), v.end());
      sh.views[p][scheme_.slot(p, s1)] = std::move(v);
    }
    out.push_back(std::move(sh));
  }
  for (auto& [route, payload] : outbox) {
    net_.send(route.first, route.second, std::move(payload), MsgKind::kReshare);
  }
  net_.flush();
  // Receivers read their messages in pair order, one block per pair.
  std::map<std::pair<PartyId, PartyId>, RingVec> inbox;
  std::map<std::pair<PartyId, PartyId>, std::size_t> cursor;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [s0, s1] = pairs[k];
    const RingVec* first = nullptr;
    std::size_t first_off = 0;
    for (PartyId p = 0; p < 4; ++p) {
      if (p == s0 || p == s1) continue;
      const std::pair<PartyId, PartyId> route{p, s0};
      if (!inbox.count(route)) inbox[route] = net_.recv(s0, p);
      const std::size_t off = cursor[route];
      if (inbox[route].size() < off + n) throw NetworkError("short reshare message");
      if (first == nullptr) {
        first = &inbox[route];
        first_off = off;
      } else if (!std::equal(first->begin() + first_off, first->begin() + first_off + n,
                             inbox[route].begin() + off)) {
        throw ProtocolAbort("party " + std::to_string(s0) +
                            " received conflicting reshare copies");
      }
      cursor[route] += n;
    }
    out[k].views[s0][scheme_.slot(s0, s1)].assign(first->begin() + first_off,
                                                   first->begin() + first_off + n);
  }
  return out;
}

RingVec Protocol::open(const Shared& x, MsgKind kind) {
  const int n = parties();
  std::vector<RingVec> learned(n);
  switch (scheme_.kind()) {
    case SchemeKind::kAdditive: {
      for (PartyId p = 0; p < n; ++p) {
        for (PartyId q = 0; q < n; ++q) {
          if (q != p) net_.send(p, q, x.views[p][0], kind);
        }
      }
      net_.flush();
      for (PartyId p = 0; p < n; ++p) {
        RingVec acc = x.views[p][0];
        for (PartyId q = 0; q < n; ++q) {
          if (q != p) combine(x.domain, acc, net_.recv(p, q));
        }
        learned[p] = std::move(acc);
      }
      break;
    }
    case SchemeKind::kRss3: {
      // Party i lacks summand i+2; party i+1 holds it in slot 1.
      for (PartyId i = 0; i < 3; ++i) net_.send((i + 1) % 3, i, x.views[(i + 1) % 3][1], kind);
      net_.flush();
      for (PartyId i = 0; i < 3; ++i) {
        RingVec acc = net_.recv(i, (i + 1) % 3);
        if (acc.size() != x.size) throw NetworkError("short open message");
        combine(x.domain, acc, x.views[i][0]);
        combine(x.domain, acc, x.views[i][1]);
        learned[i] = std::move(acc);
      }
      break;
    }
    case SchemeKind::kRss4: {
      // Party i lacks summand i; parties i+1 and i+2 both send it.
      for (PartyId i = 0; i < 4; ++i) {
        for (int off = 1; off <= 2; ++off) {
          const PartyId src = (i + off) % 4;
          net_.send(src, i, x.views[src][scheme_.slot(src, i)], kind);
        }
      }
      net_.flush();
      for (PartyId i = 0; i < 4; ++i) {
        RingVec first = net_.recv(i, (i + 1) % 4);
        const RingVec second = net_.recv(i, (i + 2) % 4);
        if (first != second) {
          throw ProtocolAbort("party " + std::to_string(i) +
                              " received conflicting opening copies");
        }
        if (first.size() != x.size) throw NetworkError("short open message");
        for (const auto& v : x.views[i]) combine(x.domain, first, v);
        learned[i] = std::move(first);
      }
      break;
    }
  }
  for (PartyId p = 1; p < n; ++p) {
    if (learned[p] != learned[0]) throw ProtocolAbort("parties opened different values");
  }
  return learned[0];
}

RingVec Protocol::open_to(const Shared& x, PartyId target, MsgKind kind) {
  const int n = parties();
  if (target < 0 || target >= n) throw ParameterError("bad open target");
  RingVec acc;
  switch (scheme_.kind()) {
    case SchemeKind::kAdditive: {
      for (PartyId q = 0; q < n; ++q) {
        if (q != target) net_.send(q, target, x.views[q][0], kind);
      }
      net_.flush();
      acc = x.views[target][0];
      for (PartyId q = 0; q < n; ++q) {
        if (q != target) combine(x.domain, acc, net_.recv(target, q));
      }
      break;
    }
    case SchemeKind::kRss3: {
      const PartyId src = (target + 1) % 3;
      net_.send(src, target, x.views[src][1], kind);
      net_.flush();
      acc = net_.recv(target, src);
      if (acc.size() != x.size) throw NetworkError("short open message");
      combine(x.domain, acc, x.views[target][0]);
      combine(x.domain, acc, x.views[target][1]);
      break;
    }
    case SchemeKind::kRss4: {
      for (int off = 1; off <= 2; ++off) {
        const PartyId src = (target + off) % 4;
        net_.send(src, target, x.views[src][scheme_.slot(src, target)], kind);
      }
      net_.flush();
      acc = net_.recv(target, (target + 1) % 4);
      if (acc != net_.recv(target, (target + 2) % 4)) {
        throw ProtocolAbort("party " + std::to_string(target) +
                            " received conflicting opening copies");
      }
      if (acc.size() != x.size) throw NetworkError("short open message");
      for (const auto& v : x.views[target]) combine(x.domain, acc, v);
      break;
    }
  }
  return acc;
}

}  // namespace sharediar::mpc
