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
#include <span>
#include <vector>

#include "sharediar/smh/smh.h"

namespace sharediar::diar {

enum class Metric { kCosine, kHamming };

// Dense symmetric n x n matrix with a zero diagonal.
struct DistanceMatrix {
  std::size_t n = 0;
  Metric metric = Metric::kCosine;
  std::vector<double> d;

  DistanceMatrix() = default;
  DistanceMatrix(std::size_t size, Metric m) : n(size), metric(m), d(size * size, 0.0) {}

  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
  void set(std::size_t i, std::size_t j, double v) { d[i * n + j] = d[j * n + i] = v; }
  // Symmetry, zero diagonal, finite entries; hamming entries in [0, 1].
  void validate() const;
};

// 1 - cosine similarity. A zero vector is at distance 1 from everything
// but itself.
DistanceMatrix cosine_distances(std::span<const std::vector<double>> x);
DistanceMatrix hamming_distances(std::span<const smh::SmhHash> x);

struct Merge {
  std::size_t a = 0;  // smallest leaf index of each merged cluster, a < b
  std::size_t b = 0;
  double distance = 0;
};

// Average-linkage agglomeration. Merges the closest pair of clusters until
// the smallest inter-cluster distance exceeds `threshold`; ties go to the
// pair with the lowest (a, b) leaf indices. Labels are numbered by first
// appearance. `merges`, when given, receives the merges performed.
std::vector<int> ahc(const DistanceMatrix& dist, double threshold,
                     std::vector<Merge>* merges = nullptr);

// The complete dendrogram (n - 1 merges).
std::vector<Merge> dendrogram(const DistanceMatrix& dist);

// Renumbers labels 0, 1, ... in order of first appearance.
std::vector<int> canonical_labels(std::span<const int> labels);

}  // namespace sharediar::diar
