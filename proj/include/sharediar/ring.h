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

#include <compare>
#include <cstdint>
#include <vector>

namespace sharediar {

// Element of Z_{2^64}. Arithmetic wraps; there are no overflow traps.
struct RingElement {
  std::uint64_t value = 0;

  constexpr RingElement() = default;
  constexpr explicit RingElement(std::uint64_t v) : value(v) {}

  // Two's complement reading of the element.
  constexpr std::int64_t as_signed() const {
    return static_cast<std::int64_t>(value);
  }

  constexpr RingElement operator-() const { return RingElement(0 - value); }
  constexpr RingElement& operator+=(RingElement o) {
    value += o.value;
    return *this;
  }
  constexpr RingElement& operator-=(RingElement o) {
    value -= o.value;
    return *this;
  }
  constexpr RingElement& operator*=(RingElement o) {
    value *= o.value;
    return *this;
  }

  friend constexpr RingElement operator+(RingElement a, RingElement b) {
    return a += b;
  }
  friend constexpr RingElement operator-(RingElement a, RingElement b) {
    return a -= b;
  }
  friend constexpr RingElement operator*(RingElement a, RingElement b) {
    return a *= b;
  }
  friend constexpr auto operator<=>(RingElement, RingElement) = default;
};

// Bulk storage for shares and messages: one uint64 per ring element.
using RingVec = std::vector<std::uint64_t>;

// Fixed-point reading of ring elements: signed(e) / 2^frac_bits.
struct FixedPointCodec {
  int frac_bits = 16;
  int int_bits = 15;

  // Throws ParameterError unless 0 <= frac_bits, 0 <= int_bits and
  // frac_bits + int_bits <= 63.
  void validate() const;

  double max_value() const;  // 2^int_bits - 2^-frac_bits
  double min_value() const;  // -2^int_bits
  double ulp() const;        // 2^-frac_bits

  // round(x * 2^frac_bits), half away from zero. Throws RangeError when x
  // is outside [min_value(), max_value()] or not finite.
  RingElement encode(double x) const;
  double decode(RingElement e) const;

  RingVec encode(const std::vector<double>& xs) const;
  std::vector<double> decode(const RingVec& es) const;

  // decode(encode(x)): the nearest point of the codec grid.
  double quantize(double x) const;
};

}  // namespace sharediar
