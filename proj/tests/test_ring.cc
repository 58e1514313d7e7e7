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
#include <random>

#include <gtest/gtest.h>

#include "sharediar/error.h"
#include "sharediar/ring.h"

namespace sharediar {
namespace {

using u128 = unsigned __int128;

TEST(Ring, AgreesWithWideIntegerReference) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1'000'000; ++i) {
    const std::uint64_t a = rng(), b = rng();
    const RingElement x(a), y(b);
    const u128 mod = u128{1} << 64;
    ASSERT_EQ((x + y).value, static_cast<std::uint64_t>((u128{a} + b) % mod));
    ASSERT_EQ((x - y).value, static_cast<std::uint64_t>((u128{a} + (mod - b)) % mod));
    ASSERT_EQ((x * y).value, static_cast<std::uint64_t>((u128{a} * b) % mod));
  }
}

TEST(Ring, AdditiveInverse) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const RingElement x(rng());
    EXPECT_EQ((x + (-x)).value, 0u);
  }
  EXPECT_EQ((-RingElement(0)).value, 0u);
}

TEST(FixedPoint, EncodeExamples) {
  const FixedPointCodec c;
  EXPECT_EQ(c.encode(0.0).value, 0u);
  EXPECT_EQ(c.encode(1.0).value, 65536u);
  EXPECT_EQ(c.encode(-1.0).value, 0ull - 65536u);
  EXPECT_EQ(c.decode(RingElement(65536)), 1.0);
  EXPECT_EQ(c.decode(RingElement(0ull - 32768)), -0.5);
}

TEST(FixedPoint, RoundsHalfAwayFromZero) {
  const FixedPointCodec c;
  const double half_ulp = std::ldexp(1.0, -17);
  EXPECT_EQ(c.encode(half_ulp).value, 1u);
  EXPECT_EQ(c.encode(-half_ulp).as_signed(), -1);
  EXPECT_EQ(c.encode(3 * half_ulp).value, 2u);
}

TEST(FixedPoint, RangeBounds) {
  const FixedPointCodec c;
  EXPECT_EQ(c.max_value(), 32768.0 - std::ldexp(1.0, -16));
  EXPECT_EQ(c.min_value(), -32768.0);
  EXPECT_NO_THROW(c.encode(c.max_value()));
  EXPECT_NO_THROW(c.encode(c.min_value()));
  EXPECT_THROW(c.encode(32768.0), RangeError);
  EXPECT_THROW(c.encode(-32769.0), RangeError);
  EXPECT_THROW(c.encode(std::nan("")), RangeError);
}

TEST(FixedPoint, RoundTripWithinHalfUlp) {
  const FixedPointCodec c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(c.min_value(), c.max_value());
  for (int i = 0; i < 100'000; ++i) {
    const double x = u(rng);
    ASSERT_LE(std::abs(c.decode(c.encode(x)) - x), std::ldexp(1.0, -17));
  }
}

TEST(FixedPoint, GridPointsAreFixed) {
  const FixedPointCodec c;
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> u(-(std::int64_t{1} << 31),
                                                (std::int64_t{1} << 31) - 1);
  for (int i = 0; i < 10'000; ++i) {
    const double x = std::ldexp(static_cast<double>(u(rng)), -16);
    ASSERT_EQ(c.decode(c.encode(x)), x);
  }
}

TEST(FixedPoint, AlternativeLayoutIsConfigurable) {
  FixedPointCodec c{15, 16};
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.encode(1.0).value, 32768u);
  EXPECT_THROW((FixedPointCodec{40, 30}.validate()), ParameterError);
  EXPECT_THROW((FixedPointCodec{-1, 10}.validate()), ParameterError);
}

TEST(FixedPoint, ProductTruncationIdentity) {
  // decode(trunc(encode(x) * encode(y))) = x*y within one ulp (plaintext
  // arithmetic shift; the shared version is in test_mpc_ops).
  const FixedPointCodec c;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-150.0, 150.0);
  for (int i = 0; i < 10'000; ++i) {
    const double x = c.quantize(u(rng)), y = c.quantize(u(rng));
    const std::int64_t prod = (c.encode(x) * c.encode(y)).as_signed() >> 16;
    ASSERT_NEAR(c.decode(RingElement(static_cast<std::uint64_t>(prod))), x * y,
                c.ulp());
  }
}

}  // namespace
}  // namespace sharediar
