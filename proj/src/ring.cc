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

#include "sharediar/ring.h"

#include <cmath>
#include <string>

#include "sharediar/error.h"

namespace sharediar {

void FixedPointCodec::validate() const {
  if (frac_bits < 0 || int_bits < 0 || frac_bits + int_bits > 63) {
    throw ParameterError("fixed-point layout needs frac_bits, int_bits >= 0 "
                         "and frac_bits + int_bits <= 63, got " +
                         std::to_string(frac_bits) + "/" +
                         std::to_string(int_bits));
  }
}

double FixedPointCodec::max_value() const {
  return std::ldexp(1.0, int_bits) - std::ldexp(1.0, -frac_bits);
}

double FixedPointCodec::min_value() const { return -std::ldexp(1.0, int_bits); }

double FixedPointCodec::ulp() const { return std::ldexp(1.0, -frac_bits); }

RingElement FixedPointCodec::encode(double x) const {
  if (!std::isfinite(x) || x > max_value() || x < min_value()) {
    throw RangeError("value " + std::to_string(x) +
                     " outside fixed-point range [" +
                     std::to_string(min_value()) + ", " +
                     std::to_string(max_value()) + "]");
  }
  // std::llround rounds halfway cases away from zero.
  const long long scaled = std::llround(std::ldexp(x, frac_bits));
  return RingElement(static_cast<std::uint64_t>(scaled));
}

double FixedPointCodec::decode(RingElement e) const {
  return std::ldexp(static_cast<double>(e.as_signed()), -frac_bits);
}

RingVec FixedPointCodec::encode(const std::vector<double>& xs) const {
  RingVec out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = encode(xs[i]).value;
  return out;
}

std::vector<double> FixedPointCodec::decode(const RingVec& es) const {
  std::vector<double> out(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    out[i] = decode(RingElement(es[i]));
  }
  return out;
}

double FixedPointCodec::quantize(double x) const { return decode(encode(x)); }

}  // namespace sharediar
