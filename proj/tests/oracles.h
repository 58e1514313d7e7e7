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

// Independent reference implementations shared by the unit tests and the
// acceptance suite. Deliberately naive: exhaustive search, explicit grids,
// numerical integration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sharediar/diar/ahc.h"
#include "sharediar/eval/rttm.h"
#include "sharediar/random.h"

namespace sharediar::oracle {

inline std::vector<double> random_unit(int n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  double norm = 0;
  for (auto& x : v) {
    x = normal(rng);
    norm += x * x;
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

// Analytic oracle for k = 2: a coordinate flips with probability g(|D|),
// the triangle wave g(t) = t on [0,1], 2 - t on [1,2], period 2, where
// D = a.(y - x) ~ N(0, (d / delta)^2).
inline double expected_hamming_k2(double d, double delta) {
  const double sigma = d / delta;
  if (sigma == 0) return 0;
  double acc = 0;
  const int steps = 20000;
  const double lim = 8 * sigma;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 0.5) * lim / steps;
    const double r = std::fmod(t, 2.0);
    const double g = r <= 1 ? r : 2 - r;
    acc += 2 * g * std::exp(-0.5 * t * t / (sigma * sigma));
  }
  return acc * (lim / steps) / (sigma * std::sqrt(2 * std::numbers::pi));
}

// Recomputes every inter-cluster average from the leaf distances at each
// step; same stopping rule and tie-break as the production code.
inline std::vector<int> brute_force_ahc(const diar::DistanceMatrix& d, double threshold) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < d.n; ++i) clusters.push_back({i});
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double s = 0;
        for (auto i : clusters[a])
          for (auto j : clusters[b]) s += d.at(i, j);
        s /= static_cast<double>(clusters[a].size() * clusters[b].size());
        if (s < best - 1e-12) {
          best = s;
          ba = a;
          bb = b;
        }
      }
    }
    if (best > threshold) break;
    clusters[ba].insert(clusters[ba].end(), clusters[bb].begin(), clusters[bb].end());
    clusters.erase(clusters.begin() + static_cast<long>(bb));
    // Keep clusters ordered by smallest member for the tie-break.
    std::sort(clusters.begin(), clusters.end(), [](const auto& x, const auto& y) {
      return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
    });
  }
  std::vector<int> raw(d.n);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (auto i : clusters[c]) raw[i] = static_cast<int>(c);
  return diar::canonical_labels(raw);
}

// Turns with endpoints on the 10 ms grid.
inline std::vector<eval::RttmTurn> random_turns(std::mt19937_64& rng, int speakers, const char* prefix,
                                   bool overlap, const char* rec = "r1") {
  std::vector<eval::RttmTurn> out;
  for (int s = 0; s < speakers; ++s) {
    int at = static_cast<int>(uniform_int(rng, 300));
    const int turns = 1 + static_cast<int>(uniform_int(rng, 4));
    for (int k = 0; k < turns && at < 6000; ++k) {
      const int len = 10 + static_cast<int>(uniform_int(rng, 800));
      out.push_back({rec, at / 100.0, len / 100.0, std::string(prefix) + std::to_string(s)});
      at += len + (overlap ? static_cast<int>(uniform_int(rng, 600)) : 600);
    }
  }
  return out;
}

// Brute-force 10 ms-grid scorer with exhaustive speaker mapping.
inline double grid_der(const std::vector<eval::RttmTurn>& ref, const std::vector<eval::RttmTurn>& hyp) {
  std::map<std::string, int> rid, hid;
  for (const auto& x : ref) rid.emplace(x.speaker, static_cast<int>(rid.size()));
  for (const auto& x : hyp) hid.emplace(x.speaker, static_cast<int>(hid.size()));
  const int cells = 8000;
  std::vector<std::vector<bool>> ra(rid.size(), std::vector<bool>(cells)), ha(hid.size(), std::vector<bool>(cells));
  auto fill = [&](const std::vector<eval::RttmTurn>& turns, std::map<std::string, int>& ids, auto& act) {
    for (const auto& x : turns) {
      const auto a = std::lround(x.onset * 100), b = std::lround(x.end() * 100);
      for (long c = a; c < b; ++c) act[ids[x.speaker]][c] = true;
    }
  };
  fill(ref, rid, ra);
  fill(hyp, hid, ha);
  const int nr = static_cast<int>(rid.size()), nh = static_cast<int>(hid.size());
  std::vector<std::vector<double>> ov(nr, std::vector<double>(nh));
  double refs = 0, miss = 0, fa = 0, minsum = 0;
  for (int c = 0; c < cells; ++c) {
    int r = 0, h = 0;
    for (int i = 0; i < nr; ++i) r += ra[i][c];
    for (int j = 0; j < nh; ++j) h += ha[j][c];
    refs += r;
    miss += std::max(0, r - h);
    fa += std::max(0, h - r);
    minsum += std::min(r, h);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nh; ++j) ov[i][j] += ra[i][c] && ha[j][c];
  }
  // Exhaustive injective mappings ref -> hyp or unmapped.
  double best = 0;
  std::vector<int> m(nr, -1);
  std::vector<bool> used(nh, false);
  auto rec = [&](auto&& self, int i, double acc) -> void {
    if (i == nr) {
      best = std::max(best, acc);
      return;
    }
    self(self, i + 1, acc);
    for (int j = 0; j < nh; ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, acc + ov[i][j]);
      used[j] = false;
    }
  };
  rec(rec, 0, 0.0);
  return refs > 0 ? 100.0 * (miss + fa + minsum - best) / refs : 0.0;
}

}  // namespace sharediar::oracle
