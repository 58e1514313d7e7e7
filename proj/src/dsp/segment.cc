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


#include "sharediar/dsp/segment.h"

#include <algorithm>
#include <cmath>

#include "sharediar/error.h"

namespace sharediar::dsp {
namespace {
constexpr double kEps = 1e-9;
}

void SegmentSpec::validate() const {
  if (!(shift > 0) || !(window >= shift)) throw ParameterError("segment spec needs 0 < shift <= window");
  if (min_tail < 0) throw ParameterError("min_tail must be non-negative");
}

std::vector<SpeechRegion> oracle_vad(std::span<const eval::RttmTurn> reference) {
  std::vector<SpeechRegion> spans;
  for (const auto& t : reference) {
    if (t.duration > 0) spans.push_back({t.onset, t.end()});
  }
  std::sort(spans.begin(), spans.end(),
            [](const SpeechRegion& a, const SpeechRegion& b) { return a.start < b.start; });
  std::vector<SpeechRegion> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.start <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<Window> segment(std::span<const SpeechRegion> regions, const SegmentSpec& spec) {
  spec.validate();
  std::vector<Window> out;
  for (const auto& r : regions) {
    if (r.end - r.start <= spec.window + kEps) {
      out.push_back({r.start, r.end});
      continue;
    }
    double last_end = 0;
    for (int i = 0;; ++i) {
      const double s = r.start + i * spec.shift;
      if (s + spec.window > r.end + kEps) break;
      last_end = s + spec.window;
      out.push_back({s, last_end});
    }
    const double tail = r.end - last_end;
    if (tail <= kEps) {
      out.back().end = r.end;
    } else if (tail + kEps >= spec.min_tail) {
      out.push_back({r.end - spec.window, r.end});
    } else {
      out.back().end = r.end;
    }
  }
  return out;
}

FeatureMatrix window_features(const FeatureMatrix& features, const Window& w, double frame_shift) {
  if (features.frames == 0) throw DimensionError("no feature frames");
  const auto clamp = [&](double t) {
    const long i = std::lround(t / frame_shift);
    return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(features.frames)));
  };
  std::size_t begin = clamp(w.start);
  std::size_t end = clamp(w.end);
  if (begin >= features.frames) begin = features.frames - 1;
  if (end <= begin) end = begin + 1;
  return features.slice(begin, end);
}

}  // namespace sharediar::dsp
