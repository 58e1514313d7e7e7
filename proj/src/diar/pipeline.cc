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


#include "sharediar/diar/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sharediar/error.h"
#include "sharediar/eval/score.h"
#include "sharediar/mpc/protocol.h"

namespace sharediar::diar {

Mode mode_from_name(const std::string& name) {
  if (name == "baseline") return Mode::kBaseline;
  if (name == "private") return Mode::kPrivate;
  throw ParameterError("unknown mode '" + name + "' (baseline|private)");
}

std::vector<Turn> labels_to_output(std::span<const dsp::Window> windows, std::span<const int> labels,
                                   std::span<const dsp::SpeechRegion> regions, double step) {
  if (windows.size() != labels.size()) throw DimensionError("one label per window required");
  if (!(step > 0)) throw ParameterError("step must be positive");
  std::vector<Turn> out;
  std::size_t w0 = 0;
  for (const auto& r : regions) {
    while (w0 < windows.size() && windows[w0].end <= r.start) ++w0;
    std::size_t w1 = w0;
    while (w1 < windows.size() && windows[w1].start < r.end) ++w1;
    if (w1 == w0) continue;
    for (int i = 0;; ++i) {
      const double s = r.start + i * step;
      if (s >= r.end - 1e-9) break;
      const double e = std::min(r.end, s + step);
      const double c = 0.5 * (s + e);
      std::size_t best = w0;
      for (std::size_t w = w0 + 1; w < w1; ++w) {
        if (std::abs(windows[w].center() - c) < std::abs(windows[best].center() - c)) best = w;
      }
      if (!out.empty() && out.back().label == labels[best] && std::abs(out.back().end - s) < 1e-9) {
        out.back().end = e;
      } else {
        out.push_back({s, e, labels[best]});
      }
    }
    w0 = w1;
  }
  std::vector<int> ls;
  for (const auto& t : out) ls.push_back(t.label);
  const auto canon = canonical_labels(ls);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = canon[i];
  return out;
}

std::vector<eval::RttmTurn> to_rttm(std::span<const Turn> turns, const std::string& recording) {
  std::vector<eval::RttmTurn> out;
  for (const auto& t : turns) {
    out.push_back({recording, t.start, t.end - t.start, "spk" + std::to_string(t.label)});
  }
  return out;
}

std::vector<dsp::FeatureMatrix> window_features(const dsp::AudioBuffer& audio,
                                                std::span<const dsp::Window> windows,
                                                const PipelineConfig& config) {
  std::vector<dsp::FeatureMatrix> out;
  if (windows.empty()) return out;
  const dsp::FeatureMatrix feats = dsp::mfcc(audio, config.mfcc);
  for (const auto& w : windows) {
    out.push_back(dsp::window_features(feats, w, config.mfcc.frame_shift));
    if (config.cmn) dsp::mean_normalize(out.back());
  }
  return out;
}

struct PrivateSession::State {
  State(const PipelineConfig& c)
      : config(c),
        scheme(mpc::Scheme::from_name(c.scheme)),
        net(scheme.parties()),
        proto(scheme, net, c.seed),
        dealer(proto, c.seed ^ 0xD1CE, c.trunc),
        ops(proto, dealer, c.codec, c.trunc) {}

  PipelineConfig config;
  mpc::Scheme scheme;
  mpc::SimNetwork net;
  mpc::Protocol proto;
  mpc::Dealer dealer;
  mpc::SecureOps ops;
  embed::SecureModel model;
  smh::SecureKey key;
  mpc::NetStats setup;
  mpc::Shared last;
};

PrivateSession::PrivateSession(const PipelineConfig& config, const embed::ModelWeights& weights,
                               const smh::SmhKey& key)
    : s_(std::make_unique<State>(config)) {
  if (key.n != config.tdnn.embedding_dim()) throw DimensionError("SMH key does not match the embedding size");
  const auto t0 = std::chrono::steady_clock::now();
  s_->model = embed::share_model(s_->proto, weights, config.tdnn, config.codec, kServer);
  s_->key = smh::share_key(s_->proto, key, config.codec);
  s_->setup = s_->net.total();
  s_->setup.wall_time = std::chrono::steady_clock::now() - t0;
}

PrivateSession::~PrivateSession() = default;

mpc::SimNetwork& PrivateSession::net() { return s_->net; }
mpc::Protocol& PrivateSession::proto() { return s_->proto; }
mpc::SecureOps& PrivateSession::ops() { return s_->ops; }
const mpc::NetStats& PrivateSession::setup_stats() const { return s_->setup; }
const mpc::Shared& PrivateSession::last_embeddings() const { return s_->last; }

std::vector<smh::SmhHash> PrivateSession::hash_segments(std::span<const dsp::FeatureMatrix> segments,
                                                        mpc::NetStats* stats) {
  if (segments.empty()) return {};
  const auto t0 = std::chrono::steady_clock::now();
  const mpc::NetStats before = s_->net.total();
  embed::BatchResult batch =
      embed::extract_batch(s_->ops, s_->model, segments, kClient, s_->config.sub_batch);
  s_->last = batch.embeddings;
  auto hashes = smh::hash_secure(s_->ops, s_->key, batch.embeddings, segments.size(), kServer);
  if (stats) {
    *stats = s_->net.total().since(before);
    stats->wall_time = std::chrono::steady_clock::now() - t0;
  }
  return hashes;
}

PreparedRecording prepare(const dsp::Recording& recording, Mode mode, const PipelineConfig& config,
                          const embed::ModelWeights& weights, const smh::SmhKey& key) {
  PreparedRecording p;
  p.id = recording.id;
  p.domain = recording.domain;
  p.regions = dsp::oracle_vad(recording.turns);
  p.windows = dsp::segment(p.regions, config.segments);
  const auto feats = window_features(recording.audio, p.windows, config);
  if (mode == Mode::kBaseline) {
    std::vector<std::vector<double>> emb;
    for (const auto& f : feats) emb.push_back(embed::plaintext_forward(f, weights, config.tdnn));
    p.distances = cosine_distances(emb);
  } else {
    p.distances = DistanceMatrix(0, Metric::kHamming);
    if (!feats.empty()) {
      PrivateSession session(config, weights, key);
      mpc::NetStats run;
      const auto hashes = session.hash_segments(feats, &run);
      p.stats = session.setup_stats();
      p.stats += run;
      p.distances = hamming_distances(hashes);
    }
  }
  return p;
}

std::vector<eval::RttmTurn> diarize(const PreparedRecording& prepared, double threshold) {
  if (prepared.windows.empty()) return {};
  const auto labels = ahc(prepared.distances, threshold);
  const auto turns = labels_to_output(prepared.windows, labels, prepared.regions);
  return to_rttm(turns, prepared.id);
}

PipelineResult run_pipeline(const dsp::Recording& recording, Mode mode, const PipelineConfig& config,
                            const embed::ModelWeights& weights, const smh::SmhKey& key,
                            double threshold) {
  const PreparedRecording p = prepare(recording, mode, config, weights, key);
  return {diarize(p, threshold), p.stats};
}

SweepResult threshold_sweep(std::span<const PreparedRecording> prepared,
                            const std::vector<eval::RttmTurn>& reference,
                            std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("threshold grid is empty");
  SweepResult out;
  out.grid.assign(grid.begin(), grid.end());
  std::map<std::string, std::vector<eval::RttmTurn>> ref_of;
  for (const auto& t : reference) ref_of[t.recording].push_back(t);

  for (double thr : grid) {
    eval::ErrorTally total;
    std::map<std::string, eval::ErrorTally> dom;
    for (const auto& p : prepared) {
      const auto hyp = diarize(p, thr);
      ++out.evaluations;
      const eval::ErrorTally t = eval::score_recording(ref_of[p.id], hyp);
      total += t;
      dom[p.domain] += t;
    }
    out.der.push_back(eval::ScoreReport::from(total).der);
    for (const auto& [d, t] : dom) out.der_by_domain[d].push_back(eval::ScoreReport::from(t).der);
  }
  auto argmin = [&](const std::vector<double>& ders) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ders.size(); ++i) {
      if (ders[i] < ders[best] || (ders[i] == ders[best] && out.grid[i] < out.grid[best])) best = i;
    }
    return best;
  };
  const std::size_t b = argmin(out.der);
  out.best_threshold = out.grid[b];
  out.best_der = out.der[b];
  for (const auto& [d, ders] : out.der_by_domain) out.best_by_domain[d] = out.grid[argmin(ders)];
  return out;
}

std::vector<eval::RttmTurn> diarize_all(std::span<const PreparedRecording> prepared,
                                        const std::map<std::string, double>& by_domain,
                                        double fallback) {
  std::vector<eval::RttmTurn> out;
  for (const auto& p : prepared) {
    const auto it = by_domain.find(p.domain);
    const auto hyp = diarize(p, it == by_domain.end() ? fallback : it->second);
    out.insert(out.end(), hyp.begin(), hyp.end());
  }
  return out;
}

}  // namespace sharediar::diar
