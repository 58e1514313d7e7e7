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

#include "sharediar/mpc/ops.h"

#include <array>
#include <cmath>
#include <string>

#include "sharediar/error.h"

namespace sharediar::mpc {
namespace {

// Runs `f` with the network accounting switched to the offline phase.
template <class F>
auto offline(SimNetwork& net, F&& f) {
  const Phase saved = net.phase();
  net.set_phase(Phase::kOffline);
  auto result = f();
  net.set_phase(saved);
  return result;
}

}  // namespace

void TruncConfig::validate() const {
  if (value_bits < 2 || stat_sec < 0 || value_bits + stat_sec > 63) {
    throw ParameterError("truncation needs value_bits + stat_sec <= 63, got " +
                         std::to_string(value_bits) + " + " +
                         std::to_string(stat_sec));
  }
}

Dealer::Dealer(Protocol& proto, std::uint64_t seed, TruncConfig config,
               std::optional<std::size_t> budget)
    : proto_(proto),
      config_(config),
      budget_(budget),
      rng_(Prg::derive(seed, "dealer-correlations")) {
  config_.validate();
}

void Dealer::consume(std::size_t n) {
  if (budget_ && used_ + n > *budget_) {
    throw RandomnessExhausted("dealer budget of " + std::to_string(*budget_) +
                              " correlations exhausted");
  }
  used_ += n;
}

TruncPair Dealer::trunc_pairs(std::size_t n, int shift) {
  consume(n);
  const int width = config_.value_bits + config_.stat_sec;
  RingVec r(n);
  RingVec hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = rng_() >> (64 - width);
    hi[i] = r[i] >> shift;
  }
  return offline(proto_.net(), [&] {
    return TruncPair{proto_.deal(r, Domain::kArith), proto_.deal(hi, Domain::kArith)};
  });
}

DaBits Dealer::dabits(std::size_t n) {
  consume(n);
  RingVec b(n);
  for (auto& v : b) v = rng_() & 1u;
  return offline(proto_.net(), [&] {
    return DaBits{proto_.deal(b, Domain::kBool), proto_.deal(b, Domain::kArith)};
  });
}

DaWords Dealer::dawords(std::size_t n) {
  consume(n);
  RingVec w(n);
  RingVec bits(64 * n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = rng_();
    for (int j = 0; j < 64; ++j) bits[64 * i + j] = (w[i] >> j) & 1u;
  }
  return offline(proto_.net(), [&] {
    return DaWords{proto_.deal(w, Domain::kBool), proto_.deal(bits, Domain::kArith)};
  });
}

SecureOps::SecureOps(Protocol& proto, Dealer& dealer, FixedPointCodec codec,
                     TruncConfig trunc)
    : proto_(proto), dealer_(dealer), codec_(codec), trunc_(trunc) {
  codec_.validate();
  trunc_.validate();
}

void SecureOps::shadow_check_trunc_input(const Shared& x, int shift) {
  const RingVec plain = proto_.reveal(x);
  const std::int64_t bound = std::int64_t{1} << (trunc_.value_bits - 1);
  for (std::uint64_t v : plain) {
    const auto s = static_cast<std::int64_t>(v);
    if (s >= bound || s <= -bound) {
      throw OverflowError("truncation input " + std::to_string(std::ldexp(
                              static_cast<double>(s), -shift)) +
                          " exceeds 2^" + std::to_string(trunc_.value_bits - 1) +
                          " ring units");
    }
  }
}

void SecureOps::shadow_check_codec_range(const Shared& x, const char* what) {
  const RingVec plain = proto_.reveal(x);
  for (std::uint64_t v : plain) {
    const double d = codec_.decode(RingElement(v));
    if (d > codec_.max_value() || d < codec_.min_value()) {
      throw OverflowError(std::string(what) + " value " + std::to_string(d) +
                          " outside the fixed-point range");
    }
  }
}

// Adds a public bias so the secret is non-negative, masks it with r below
// 2^(value_bits + stat_sec) and opens the sum, which cannot wrap. Then
//   (c >> shift) - (r >> shift) - (bias >> shift)
// equals floor(x / 2^shift) or one more.
Shared SecureOps::trunc(const Shared& x, int shift) {
  if (x.domain != Domain::kArith) throw DomainError("trunc on boolean share");
  if (shift < 0 || shift >= trunc_.value_bits - 1) {
    throw ParameterError("truncation shift out of range");
  }
  if (debug_) shadow_check_trunc_input(x, shift);
  const std::uint64_t bias = std::uint64_t{1} << (trunc_.value_bits - 1);
  TruncPair pair = dealer_.trunc_pairs(x.size, shift);
  const Shared masked = proto_.add(proto_.add_public(x, bias), pair.r);
  const RingVec c = proto_.open(masked, MsgKind::kOpen);
  RingVec pub(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) pub[i] = (c[i] >> shift) - (bias >> shift);
  truncations_ += x.size;
  Shared out = proto_.add_public(proto_.neg(pair.r_shifted), pub);
  if (debug_) shadow_check_codec_range(out, "truncated");
  return out;
}

Shared SecureOps::and_(const Shared& a, const Shared& b) {
  and_words_ += a.size;
  return proto_.mul(a, b);
}

Shared SecureOps::add_bits(const Shared& a, const Shared& b) {
  if (a.domain != Domain::kBool || b.domain != Domain::kBool) {
    throw DomainError("add_bits needs boolean shares");
  }
  const Shared p0 = proto_.add(a, b);
  Shared g = and_(a, b);
  Shared p = p0;
  for (int s = 1; s < 64; s <<= 1) {
    const Shared gs = proto_.shift_left(g, s);
    if (s == 32) {
      g = proto_.add(g, and_(p, gs));
      break;
    }
    const Shared ps = proto_.shift_left(p, s);
    const std::array<const Shared*, 2> lhs{&p, &p};
    const std::array<const Shared*, 2> rhs{&gs, &ps};
    const Shared both = and_(Protocol::concat(lhs), Protocol::concat(rhs));
    g = proto_.add(g, Protocol::slice(both, 0, a.size));
    p = Protocol::slice(both, a.size, a.size);
  }
  return proto_.add(p0, proto_.shift_left(g, 1));
}

// Each arithmetic summand is already known to its holders, so it becomes a
// boolean sharing locally (that summand in its slot, zero elsewhere); the
// summands are then added with boolean adders. rss3 adds its three
// summands with two adders.
Shared SecureOps::a2b(const Shared& x) {
  if (x.domain != Domain::kArith) throw DomainError("a2b on boolean share");
  const Scheme& sch = proto_.scheme();
  if (!sch.replicated()) throw ParameterError("a2b needs a replicated scheme");
  auto convert = [&](int summand) {
    Shared out = proto_.zeros(x.size, Domain::kBool);
    for (PartyId p = 0; p < sch.parties(); ++p) {
      const int slot = sch.slot(p, summand);
      if (slot >= 0) out.views[p][slot] = x.views[p][slot];
    }
    return out;
  };
  if (sch.kind() == SchemeKind::kRss3) {
    return add_bits(add_bits(convert(0), convert(1)), convert(2));
  }
  // rss4: x0 + x1 and x2 + x3 are each known to two parties, who re-share
  // them directly, leaving a single boolean addition.
  const std::array<std::pair<int, int>, 2> pairs{{{0, 1}, {2, 3}}};
  const std::vector<Shared> halves = proto_.reshare_pair_sums(x, pairs, Domain::kBool);
  return add_bits(halves[0], halves[1]);
}

Shared SecureOps::msb(const Shared& x) { return proto_.shift_right(a2b(x), 63); }

// With a random bit r held in both domains, open c = b ^ r; then
// b = c + r - 2cr.
Shared SecureOps::b2a_bit(const Shared& bits) {
  const Shared b = proto_.mul_public(bits, std::uint64_t{1});
  const DaBits da = dealer_.dabits(b.size);
  const RingVec c = proto_.open(proto_.add(b, da.bits), MsgKind::kOpen);
  RingVec coef(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) coef[i] = 1 - 2 * c[i];
  return proto_.add_public(proto_.mul_public(da.arith, coef), c);
}

Shared SecureOps::b2a_words(const Shared& words) {
  const DaWords da = dealer_.dawords(words.size);
  const RingVec c = proto_.open(proto_.add(words, da.words), MsgKind::kOpen);
  RingVec coef(64 * c.size());
  RingVec cbits(64 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (int j = 0; j < 64; ++j) {
      const std::uint64_t bit = (c[i] >> j) & 1u;
      cbits[64 * i + j] = bit;
      coef[64 * i + j] = 1 - 2 * bit;
    }
  }
  return proto_.add_public(proto_.mul_public(da.arith, coef), cbits);
}

Shared SecureOps::relu(const Shared& x) {
  const Shared negative = b2a_bit(msb(x));
  const Shared keep = proto_.add_public(proto_.neg(negative), std::uint64_t{1});
  return proto_.mul(x, keep);
}

Shared SecureOps::fmul(const Shared& a, const Shared& b) {
  fixed_products_ += a.size;
  return trunc(proto_.mul(a, b), codec_.frac_bits);
}

Shared SecureOps::matmul(const Shared& w, const Shared& x, std::size_t p,
                         std::size_t q, std::size_t r) {
  fixed_products_ += p * r;
  return trunc(proto_.matmul(w, x, p, q, r), codec_.frac_bits);
}

Shared SecureOps::mul_public_fixed(const Shared& x, double c, int extra_bits) {
  const int bits = codec_.frac_bits + extra_bits;
  const auto scaled = static_cast<std::int64_t>(std::llround(std::ldexp(c, bits)));
  fixed_products_ += x.size;
  return trunc(proto_.mul_public(x, static_cast<std::uint64_t>(scaled)), bits);
}

Shared SecureOps::mul_public_fixed(const Shared& x, std::span<const double> c,
                                   int extra_bits) {
  if (c.size() != x.size) throw DimensionError("one constant per element expected");
  const int bits = codec_.frac_bits + extra_bits;
  RingVec scaled(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    scaled[i] = static_cast<std::uint64_t>(std::llround(std::ldexp(c[i], bits)));
  }
  fixed_products_ += x.size;
  return trunc(proto_.mul_public(x, scaled), bits);
}

Shared SecureOps::inv_sqrt(const Shared& x, int iterations) {
  if (debug_) {
    for (std::uint64_t v : proto_.reveal(x)) {
      if (codec_.decode(RingElement(v)) < kEpsilonVar) {
        throw DomainError("inv_sqrt argument below 2^-8");
      }
    }
  }
  const std::size_t n = x.size;
  const int f = codec_.frac_bits;

  // Smear the leading one downwards, then isolate it.
  Shared s = a2b(x);
  for (int sh = 1; sh < 64; sh <<= 1) {
    const Shared down = proto_.shift_right(s, sh);
    s = proto_.add(proto_.add(s, down), and_(s, down));
  }
  const Shared onehot = proto_.add(s, proto_.shift_right(s, 1));
  const Shared bits = b2a_words(onehot);

  // Leading one at ring bit j means x in [2^(j-f), 2^(j-f+1)); start from
  // 1/sqrt of the geometric midpoint of that interval.
  std::array<std::uint64_t, 64> table{};
  for (int j = 0; j < 64; ++j) {
    const double guess = std::exp2(-(j - f) / 2.0 - 0.25);
    const double scaled = std::ldexp(guess, f);
    table[j] = scaled < 0x1p62 ? static_cast<std::uint64_t>(std::llround(scaled)) : 0;
  }
  Shared y = proto_.map_linear(bits, n, [&](const RingVec& in, RingVec& out) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (int j = 0; j < 64; ++j) acc += table[j] * in[64 * i + j];
      out[i] = acc;
    }
  });

  const std::uint64_t three_halves = codec_.encode(1.5).value;
  for (int it = 0; it < iterations; ++it) {
    const Shared y2 = fmul(y, y);
    fixed_products_ += n;
    // 0.5 * x * y^2: the halving rides on the same truncation.
    const Shared half_xy2 = trunc(proto_.mul(x, y2), f + 1);
    const Shared h = proto_.add_public(proto_.neg(half_xy2), three_halves);
    y = fmul(y, h);
  }
  return y;
}

}  // namespace sharediar::mpc
