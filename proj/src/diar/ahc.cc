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


#include "sharediar/diar/ahc.h"

#include <cmath>
#include <limits>
#include <map>

#include "sharediar/error.h"

namespace sharediar::diar {

void DistanceMatrix::validate() const {
  if (d.size() != n * n) throw DimensionError("distance matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw ParameterError("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v) || v != at(j, i)) throw ParameterError("distance matrix must be symmetric and finite");
      if (metric == Metric::kHamming && (v < 0 || v > 1)) throw ParameterError("hamming distance outside [0, 1]");
    }
  }
}

DistanceMatrix cosine_distances(std::span<const std::vector<double>> x) {
  DistanceMatrix out(x.size(), Metric::kCosine);
  std::vector<double> norms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0;
    for (double v : x[i]) s += v * v;
    norms[i] = std::sqrt(s);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i].size() != x[j].size()) throw DimensionError("embedding sizes differ");
      double v = 1.0;
      if (norms[i] > 0 && norms[j] > 0) {
        double dot = 0;
        for (std::size_t k = 0; k < x[i].size(); ++k) dot += x[i][k] * x[j][k];
        v = 1.0 - dot / (norms[i] * norms[j]);
      }
      out.set(i, j, v);
    }
  }
  return out;
}

DistanceMatrix hamming_distances(std::span<const smh::SmhHash> x) {
  DistanceMatrix out(x.size(), Metric::kHamming);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) out.set(i, j, smh::hamming(x[i], x[j]));
  }
  return out;
}

std::vector<int> canonical_labels(std::span<const int> labels) {
  std::map<int, int> seen;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    const auto [it, fresh] = seen.emplace(l, static_cast<int>(seen.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<int> ahc(const DistanceMatrix& dist, double threshold, std::vector<Merge>* merges) {
  const std::size_t n = dist.n;
  if (dist.d.size() != n * n) throw DimensionError("distance matrix size mismatch");
  if (merges) merges->clear();
  // Cluster slots are named by their smallest leaf; a merge keeps the lower
  // slot, so scanning slots in order realizes the lowest-pair tie-break.
  std::vector<double> d = dist.d;
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;

  for (std::size_t live = n; live > 1; --live) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (alive[j] && d[i * n + j] < best) {
          best = d[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best <= threshold)) break;
    if (merges) merges->push_back({bi, bj, best});
    // Lance-Williams update for average linkage.
    const double si = static_cast<double>(size[bi]);
    const double sj = static_cast<double>(size[bj]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      const double v = (si * d[bi * n + k] + sj * d[bj * n + k]) / (si + sj);
      d[bi * n + k] = d[k * n + bi] = v;
    }
    size[bi] += size[bj];
    alive[bj] = false;
    for (auto& o : owner) {
      if (o == bj) o = bi;
    }
  }
  std::vector<int> labels(owner.begin(), owner.end());
  return canonical_labels(labels);
}

std::vector<Merge> dendrogram(const DistanceMatrix& dist) {
  std::vector<Merge> merges;
  ahc(dist, std::numeric_limits<double>::infinity(), &merges);
  return merges;
}

}  // namespace sharediar::diar
