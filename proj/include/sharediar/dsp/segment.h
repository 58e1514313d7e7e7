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

#include <span>
#include <vector>

#include "sharediar/dsp/features.h"
#include "sharediar/eval/rttm.h"

namespace sharediar::dsp {

struct SpeechRegion {
  double start = 0;
  double end = 0;
  bool operator==(const SpeechRegion&) const = default;
};

struct SegmentSpec {
  double window = 1.5;
  double shift = 0.25;
  // A region tail at least this long that no full window reaches gets its own
  // window snapped to the region end; shorter tails stretch the last window.
  double min_tail = 0.5;

  void validate() const;
};

struct Window {
  double start = 0;
  double end = 0;
  double center() const { return 0.5 * (start + end); }
  bool operator==(const Window&) const = default;
};

// Union of the reference turns as sorted, disjoint, maximal regions.
std::vector<SpeechRegion> oracle_vad(std::span<const eval::RttmTurn> reference);

// Sliding windows inside each region, in time order.
std::vector<Window> segment(std::span<const SpeechRegion> regions, const SegmentSpec& spec = {});

// Frames of `features` whose start time falls in [w.start, w.end); at least
// one frame as long as the window overlaps the features at all.
FeatureMatrix window_features(const FeatureMatrix& features, const Window& w, double frame_shift);

}  // namespace sharediar::dsp
