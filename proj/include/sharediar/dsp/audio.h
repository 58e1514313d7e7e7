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

#include <string>
#include <vector>

namespace sharediar::dsp {

struct AudioBuffer {
  std::vector<double> samples;  // nominally in [-1, 1]
  int sample_rate = 16000;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Mono 16-bit PCM only. Anything else raises DataError.
AudioBuffer read_wav(const std::string& path);
// Samples are clipped to [-1, 1] and rounded to 16 bits.
void write_wav(const std::string& path, const AudioBuffer& audio);

}  // namespace sharediar::dsp
