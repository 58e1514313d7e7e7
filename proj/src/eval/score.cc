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


#include "sharediar/eval/score.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sharediar/error.h"

namespace sharediar::eval {
namespace {

struct Interval {
  double begin;
  double end;
};

// Speaker name -> sorted disjoint intervals.
std::map<std::string, std::vector<Interval>> by_speaker(const std::vector<RttmTurn>& turns) {
  std::map<std::string, std::vector<Interval>> out;
  for (const auto& t : turns) out[t.speaker].push_back({t.onset, t.end()});
  for (auto& [spk, v] : out) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
    std::vector<Interval> merged;
    for (const auto& i : v) {
      if (!merged.empty() && i.begin <= merged.back().end) {
        merged.back().end = std::max(merged.back().end, i.end);
      } else {
        merged.push_back(i);
      }
    }
    v = std::move(merged);
  }
  return out;
}

bool active(const std::vector<Interval>& v, double t) {
  auto it = std::upper_bound(v.begin(), v.end(), t,
                             [](double x, const Interval& i) { return x < i.begin; });
  return it != v.begin() && t < std::prev(it)->end;
}

}  // namespace

ErrorTally& ErrorTally::operator+=(const ErrorTally& o) {
  ref_speech += o.ref_speech;
  missed += o.missed;
  false_alarm += o.false_alarm;
  confusion += o.confusion;
  jaccard_error_sum += o.jaccard_error_sum;
  ref_speakers += o.ref_speakers;
  return *this;
}

ScoreReport ScoreReport::from(const ErrorTally& t) {
  ScoreReport r;
  r.ref_speech = t.ref_speech;
  if (t.ref_speech > 0) {
    r.missed = 100.0 * t.missed / t.ref_speech;
    r.false_alarm = 100.0 * t.false_alarm / t.ref_speech;
    r.confusion = 100.0 * t.confusion / t.ref_speech;
  } else if (t.false_alarm > 0) {
    r.false_alarm = 100.0;
  }
  r.der = r.missed + r.false_alarm + r.confusion;
  r.jer = t.ref_speakers > 0 ? 100.0 * t.jaccard_error_sum / t.ref_speakers : 0.0;
  return r;
}

std::vector<int> max_weight_assignment(const std::vector<double>& weight, int rows, int cols) {
  if (static_cast<int>(weight.size()) != rows * cols) throw DimensionError("weight matrix size");
  std::vector<int> out(static_cast<std::size_t>(rows), -1);
  if (rows == 0 || cols == 0) return out;
  // Hungarian algorithm (potentials, O(n^3)) minimizing -weight on the
  // square padding of the matrix; 1-based with a virtual column 0.
  const int n = std::max(rows, cols);
  auto cost = [&](int i, int j) {
    return (i < rows && j < cols) ? -weight[static_cast<std::size_t>(i) * cols + j] : 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  for (int j = 1; j <= n; ++j) {
    const int i = p[j] - 1;
    if (i < rows && j - 1 < cols && weight[static_cast<std::size_t>(i) * cols + (j - 1)] > 0) {
      out[static_cast<std::size_t>(i)] = j - 1;
    }
  }
  return out;
}

ErrorTally score_recording(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                           const ScoreOptions& options) {
  if (options.collar < 0) throw ParameterError("collar must be non-negative");
  const auto rs = by_speaker(ref);
  const auto hs = by_speaker(hyp);
  std::vector<std::string> rnames, hnames;
  for (const auto& [k, v] : rs) rnames.push_back(k);
  for (const auto& [k, v] : hs) hnames.push_back(k);

  std::set<double> cuts;
  std::vector<Interval> excluded;
  for (const auto& t : ref) {
    cuts.insert(t.onset);
    cuts.insert(t.end());
    if (options.collar > 0) {
      for (double b : {t.onset, t.end()}) {
        excluded.push_back({std::max(0.0, b - options.collar), b + options.collar});
        cuts.insert(excluded.back().begin);
        cuts.insert(excluded.back().end);
      }
    }
  }
  for (const auto& t : hyp) {
    cuts.insert(t.onset);
    cuts.insert(t.end());
  }

  // Elementary segments: which speakers are active on each side.
  struct Piece {
    double dur;
    std::vector<int> r, h;
  };
  std::vector<Piece> pieces;
  const std::vector<double> times(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double mid = 0.5 * (times[i] + times[i + 1]);
    const bool skip = std::any_of(excluded.begin(), excluded.end(),
                                  [&](const Interval& e) { return mid >= e.begin && mid < e.end; });
    if (skip) continue;
    Piece p{times[i + 1] - times[i], {}, {}};
    for (int k = 0; k < static_cast<int>(rnames.size()); ++k) {
      if (active(rs.at(rnames[k]), mid)) p.r.push_back(k);
    }
    if (!options.score_overlap && p.r.size() > 1) continue;
    for (int k = 0; k < static_cast<int>(hnames.size()); ++k) {
      if (active(hs.at(hnames[k]), mid)) p.h.push_back(k);
    }
    if (!p.r.empty() || !p.h.empty()) pieces.push_back(std::move(p));
  }

  const int nr = static_cast<int>(rnames.size());
  const int nh = static_cast<int>(hnames.size());
  std::vector<double> overlap(static_cast<std::size_t>(nr * nh), 0.0);
  std::vector<double> rdur(nr, 0.0), hdur(nh, 0.0);
  for (const auto& p : pieces) {
    for (int r : p.r) {
      rdur[r] += p.dur;
      for (int h : p.h) overlap[static_cast<std::size_t>(r * nh + h)] += p.dur;
    }
    for (int h : p.h) hdur[h] += p.dur;
  }
  const std::vector<int> map = max_weight_assignment(overlap, nr, nh);

  ErrorTally t;
  for (const auto& p : pieces) {
    const double nref = static_cast<double>(p.r.size());
    const double nhyp = static_cast<double>(p.h.size());
    int matched = 0;
    for (int r : p.r) {
      if (map[r] >= 0 && std::find(p.h.begin(), p.h.end(), map[r]) != p.h.end()) ++matched;
    }
    t.ref_speech += nref * p.dur;
    t.missed += std::max(0.0, nref - nhyp) * p.dur;
    t.false_alarm += std::max(0.0, nhyp - nref) * p.dur;
    t.confusion += (std::min(nref, nhyp) - matched) * p.dur;
  }
  for (int r = 0; r < nr; ++r) {
    double err = 1.0;
    if (map[r] >= 0) {
      const double inter = overlap[static_cast<std::size_t>(r * nh + map[r])];
      const double uni = rdur[r] + hdur[map[r]] - inter;
      err = uni > 0 ? 1.0 - inter / uni : 0.0;
    }
    t.jaccard_error_sum += err;
    ++t.ref_speakers;
  }
  return t;
}

namespace {

std::map<std::string, std::pair<std::vector<RttmTurn>, std::vector<RttmTurn>>> split_by_recording(
    const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp) {
  std::map<std::string, std::pair<std::vector<RttmTurn>, std::vector<RttmTurn>>> out;
  for (const auto& t : ref) out[t.recording].first.push_back(t);
  for (const auto& t : hyp) out[t.recording].second.push_back(t);
  return out;
}

}  // namespace

ScoreReport der(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                const ScoreOptions& options) {
  ErrorTally total;
  for (const auto& [rec, p] : split_by_recording(ref, hyp)) total += score_recording(p.first, p.second, options);
  return ScoreReport::from(total);
}

double jer(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp) {
  return der(ref, hyp).jer;
}

CorpusScore score_corpus(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                         const std::map<std::string, std::string>& domain_of,
                         const ScoreOptions& options) {
  ErrorTally total;
  std::map<std::string, ErrorTally> dom;
  for (const auto& [rec, p] : split_by_recording(ref, hyp)) {
    const ErrorTally t = score_recording(p.first, p.second, options);
    total += t;
    const auto it = domain_of.find(rec);
    dom[it == domain_of.end() ? "-" : it->second] += t;
  }
  CorpusScore out;
  out.overall = ScoreReport::from(total);
  for (const auto& [d, t] : dom) out.by_domain[d] = ScoreReport::from(t);
  return out;
}

}  // namespace sharediar::eval
