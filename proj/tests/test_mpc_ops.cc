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

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sharediar/error.h"
#include "sharediar/mpc/ops.h"

namespace sharediar::mpc {
namespace {

// One scheme instance with its network, dealer and secure ops.
struct Env {
  explicit Env(const char* name, std::uint64_t seed = 1)
      : scheme(Scheme::from_name(name)),
        net(scheme.parties()),
        proto(scheme, net, seed),
        dealer(proto, seed + 1),
        ops(proto, dealer) {}

  Shared share(const std::vector<double>& x) { return proto.input(0, codec().encode(x)); }
  std::vector<double> open(const Shared& s) { return codec().decode(proto.open(s)); }
  const FixedPointCodec& codec() const { return ops.codec(); }

  Scheme scheme;
  SimNetwork net;
  Protocol proto;
  Dealer dealer;
  SecureOps ops;
};

std::vector<double> uniform(std::size_t n, double lo, double hi, std::mt19937_64& rng,
                            const FixedPointCodec& c) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = c.quantize(u(rng));
  return v;
}

class OpsTest : public ::testing::TestWithParam<const char*> {};

TEST_P(OpsTest, TruncExamples) {
  Env env(GetParam());
  const double ulp = env.codec().ulp();
  const Shared one = env.share({1.0});
  EXPECT_NEAR(env.open(env.ops.fmul(one, one))[0], 1.0, ulp);
  const Shared zero = env.proto.input(0, RingVec{0});
  EXPECT_NEAR(env.open(env.ops.trunc(zero, 16))[0], 0.0, ulp);
}

TEST_P(OpsTest, TruncRandomProducts) {
  Env env(GetParam());
  std::mt19937_64 rng(2);
  const auto x = uniform(10'000, -150, 150, rng, env.codec());
  const auto y = uniform(10'000, -150, 150, rng, env.codec());
  const auto z = env.open(env.ops.fmul(env.share(x), env.share(y)));
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(z[i] - x[i] * y[i]));
  EXPECT_LE(worst, env.codec().ulp());
}

TEST_P(OpsTest, A2bMatchesBinary) {
  Env env(GetParam());
  std::mt19937_64 rng(3);
  RingVec x(1000);
  for (auto& v : x) v = rng();
  x[0] = 0;
  const Shared b = env.ops.a2b(env.proto.input(1, x));
  EXPECT_EQ(b.domain, Domain::kBool);
  EXPECT_EQ(env.proto.open(b), x);
}

TEST_P(OpsTest, A2bAndGateCount) {
  Env env(GetParam());
  const Shared x = env.proto.input(0, RingVec(10, 5));
  const auto words_before = env.ops.and_words();
  const NetStats before = env.net.stats(Phase::kOnline);
  env.ops.a2b(x);
  // 64-bit adders of 12 AND words each, per element: two summand additions
  // for rss3; one for rss4 after the pairwise re-sharing.
  const bool rss3 = env.scheme.kind() == SchemeKind::kRss3;
  const int adds = rss3 ? 2 : 1;
  EXPECT_EQ(env.ops.and_words() - words_before, static_cast<std::uint64_t>(adds * 12 * 10));
  // Communication matches the gate count: each AND word is one product.
  // Under rss4, party 0 also sends its copy of x2 + x3 to party 2.
  const NetStats d = env.net.stats(Phase::kOnline).since(before);
  const std::uint64_t per_word = rss3 ? 8 : 24;
  const std::uint64_t reshare = rss3 ? 0 : 8;
  EXPECT_EQ(d.parties[0].bytes_sent, (per_word * adds * 12 + reshare) * 10);
}

TEST_P(OpsTest, MsbMatchesSign) {
  Env env(GetParam());
  std::mt19937_64 rng(4);
  auto x = uniform(10'000, -1000, 1000, rng, env.codec());
  x[0] = -3.5;
  x[1] = 0.0;
  const RingVec bits = env.proto.open(env.ops.msb(env.share(x)));
  EXPECT_EQ(bits[0], 1u);
  EXPECT_EQ(bits[1], 0u);
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_EQ(bits[i], x[i] < 0 ? 1u : 0u) << x[i];
}

TEST_P(OpsTest, ReluMatchesPlaintext) {
  Env env(GetParam());
  std::mt19937_64 rng(5);
  auto x = uniform(10'000, -500, 500, rng, env.codec());
  x[0] = -2.5;
  x[1] = 3.25;
  const auto r = env.open(env.ops.relu(env.share(x)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_NEAR(r[i], std::max(0.0, x[i]), env.codec().ulp());
  }
  // relu(x) + relu(-x) = |x|
  std::vector<double> neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
  const auto rn = env.open(env.ops.relu(env.share(neg)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_NEAR(r[i] + rn[i], std::abs(x[i]), 2 * env.codec().ulp());
  }
}

TEST_P(OpsTest, MatmulAgainstDoubleOracle) {
  Env env(GetParam());
  std::mt19937_64 rng(6);
  const std::size_t n = 8;
  const auto w = uniform(n * n, -4, 4, rng, env.codec());
  const auto x = uniform(n * n, -4, 4, rng, env.codec());
  const auto y = uniform(n * n, -4, 4, rng, env.codec());
  const Shared sw = env.share(w), sx = env.share(x), sy = env.share(y);
  const auto z = env.open(env.ops.matmul(sw, sx, n, n, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double want = 0;
      for (std::size_t k = 0; k < n; ++k) want += w[i * n + k] * x[k * n + j];
      ASSERT_NEAR(z[i * n + j], want, n * env.codec().ulp());
    }
  }
  // Linearity within twice the truncation error.
  const auto lhs = env.open(env.ops.matmul(sw, env.proto.add(sx, sy), n, n, n));
  const auto r1 = env.open(env.ops.matmul(sw, sy, n, n, n));
  for (std::size_t i = 0; i < n * n; ++i) {
    ASSERT_NEAR(lhs[i], z[i] + r1[i], 2 * env.codec().ulp());
  }
}

TEST_P(OpsTest, MatmulIdentity) {
  Env env(GetParam());
  std::mt19937_64 rng(7);
  const std::size_t n = 5, r = 3;
  std::vector<double> eye(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) eye[i * n + i] = 1.0;
  const auto x = uniform(n * r, -100, 100, rng, env.codec());
  const auto z = env.open(env.ops.matmul(env.share(eye), env.share(x), n, n, r));
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(z[i], x[i], env.codec().ulp());
}

TEST_P(OpsTest, MatmulCommunicationAccounting) {
  Env env(GetParam());
  const std::size_t p = 4, q = 6, r = 5;
  const Shared w = env.share(std::vector<double>(p * q, 0.5));
  const Shared x = env.share(std::vector<double>(q * r, 0.25));
  const NetStats before = env.net.stats(Phase::kOnline);
  const auto dealer_before = env.dealer.used();
  env.ops.matmul(w, x, p, q, r);
  const NetStats d = env.net.stats(Phase::kOnline).since(before);
  // One product round plus one truncation opening; p*r elements each.
  EXPECT_EQ(d.rounds, 2u);
  EXPECT_EQ(env.dealer.used() - dealer_before, p * r);
  const std::uint64_t mul_bytes = env.scheme.kind() == SchemeKind::kRss3 ? 8 : 24;
  const std::uint64_t open_bytes = env.scheme.kind() == SchemeKind::kRss3 ? 8 : 16;
  EXPECT_EQ(d.parties[1].bytes_sent, (mul_bytes + open_bytes) * p * r);
}

TEST_P(OpsTest, InvSqrtExamplesAndSweep) {
  Env env(GetParam());
  std::vector<double> x{1.0, 4.0};
  for (int i = 0; i < 100; ++i) x.push_back(env.codec().quantize(std::exp2(-8.0 + 16.0 * i / 99)));
  const auto y = env.open(env.ops.inv_sqrt(env.share(x)));
  EXPECT_NEAR(y[0], 1.0, std::exp2(-10));
  EXPECT_NEAR(y[1], 0.5, std::exp2(-10));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double want = 1.0 / std::sqrt(x[i]);
    EXPECT_LE(std::abs(y[i] - want) / want, std::exp2(-10)) << "x=" << x[i];
  }
}

TEST_P(OpsTest, MulPublicFixed) {
  Env env(GetParam());
  std::mt19937_64 rng(8);
  const auto x = uniform(1000, -300, 300, rng, env.codec());
  const auto z = env.open(env.ops.mul_public_fixed(env.share(x), 1.0 / 3.0, 8));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_NEAR(z[i], x[i] / 3.0, 2 * env.codec().ulp());
  }
}

TEST_P(OpsTest, EveryFixedProductTruncatedOnce) {
  Env env(GetParam());
  std::mt19937_64 rng(9);
  const auto x = uniform(64, 0.5, 4, rng, env.codec());
  const Shared s = env.share(x);
  env.ops.fmul(s, s);
  env.ops.matmul(s, s, 8, 8, 8);
  env.ops.relu(s);
  env.ops.inv_sqrt(s);
  env.ops.mul_public_fixed(s, 0.1);
  EXPECT_GT(env.ops.fixed_products(), 0u);
  EXPECT_EQ(env.ops.fixed_products(), env.ops.truncations());
}

INSTANTIATE_TEST_SUITE_P(Schemes, OpsTest, ::testing::Values("rss3", "rss4"));

TEST(Ops, AdditiveSchemeHasNoBitDecomposition) {
  Env env("additive");
  EXPECT_THROW(env.ops.a2b(env.proto.input(0, RingVec{1})), ParameterError);
}

TEST(Dealer, BudgetExhaustion) {
  const Scheme s = Scheme::rss3();
  SimNetwork net(3);
  Protocol proto(s, net, 1);
  Dealer dealer(proto, 2, {}, 10);
  EXPECT_NO_THROW(dealer.trunc_pairs(8, 16));
  EXPECT_THROW(dealer.trunc_pairs(3, 16), RandomnessExhausted);
  EXPECT_GT(net.stats(Phase::kOffline).dealer_bytes, 0u);
  EXPECT_EQ(net.stats(Phase::kOnline).dealer_bytes, 0u);
}

TEST(Dealer, TruncPairsAreConsistent) {
  SimNetwork net(3);
  Protocol proto(Scheme::rss3(), net, 1);
  Dealer dealer(proto, 3);
  const TruncPair tp = dealer.trunc_pairs(1000, 16);
  const RingVec r = proto.reveal(tp.r), hi = proto.reveal(tp.r_shifted);
  for (std::size_t i = 0; i < r.size(); ++i) {
    ASSERT_LT(r[i], std::uint64_t{1} << 63);
    ASSERT_EQ(hi[i], r[i] >> 16);
  }
}

TEST(TruncConfig, Validation) {
  EXPECT_THROW((TruncConfig{50, 20}.validate()), ParameterError);
  EXPECT_NO_THROW((TruncConfig{40, 23}.validate()));
}

TEST(Debug, ShadowFlagsOverflowAndDomain) {
  Env env("rss3");
  env.ops.set_debug(true);
  const Shared big = env.share({20000.0});
  EXPECT_THROW(env.ops.fmul(big, big), OverflowError);
  const Shared tiny = env.share({0.001});
  EXPECT_THROW(env.ops.inv_sqrt(tiny), DomainError);
  const Shared ok = env.share({3.0});
  EXPECT_NO_THROW(env.ops.fmul(ok, ok));
}

}  // namespace
}  // namespace sharediar::mpc
