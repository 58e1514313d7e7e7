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

#include <cstddef>
#include <vector>

namespace sharediar::dsp {

// Frame-major feature matrix: row t holds the `dim` coefficients of frame t.
struct FeatureMatrix {
  std::size_t frames = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t t, std::size_t d) : frames(t), dim(d), data(t * d, 0.0) {}

  double& at(std::size_t t, std::size_t d) { return data[t * dim + d]; }
  double at(std::size_t t, std::size_t d) const { return data[t * dim + d]; }

  // Rows [begin, end).
  FeatureMatrix slice(std::size_t begin, std::size_t end) const {
    FeatureMatrix out(end - begin, dim);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = data[begin * dim + i];
    return out;
  }
};

}  // namespace sharediar::dsp
