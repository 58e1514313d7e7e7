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

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sharediar/diar/ahc.h"
#include "sharediar/dsp/mfcc.h"
#include "sharediar/dsp/segment.h"
#include "sharediar/dsp/synth.h"
#include "sharediar/embed/tdnn.h"
#include "sharediar/eval/rttm.h"
#include "sharediar/mpc/network.h"
#include "sharediar/mpc/ops.h"
#include "sharediar/smh/smh.h"

namespace sharediar::diar {

enum class Mode { kBaseline, kPrivate };
Mode mode_from_name(const std::string& name);

// Party roles in private mode: the server holds the model and learns the
// hashes, the client holds the audio. The SMH key comes from the dealer.
inline constexpr mpc::PartyId kServer = 0;
inline constexpr mpc::PartyId kClient = 1;

struct PipelineConfig {
  dsp::MfccConfig mfcc;
  dsp::SegmentSpec segments;
  bool cmn = true;  // per-window mean normalization of the features
  embed::TdnnConfig tdnn = embed::TdnnConfig::desk();
  smh::SmhParams smh;
  std::string scheme = "rss3";
  FixedPointCodec codec;
  mpc::TruncConfig trunc;
  std::size_t sub_batch = 16;
  std::uint64_t seed = 1;  // protocol and dealer randomness
};

struct Turn {
  double start = 0;
  double end = 0;
  int label = 0;
};

// Splits every region into `step`-second pieces; each piece takes the label
// of the window (inside that region) whose center is nearest the piece's
// center, earlier window on ties. Adjacent pieces with equal labels merge.
std::vector<Turn> labels_to_output(std::span<const dsp::Window> windows, std::span<const int> labels,
                                   std::span<const dsp::SpeechRegion> regions, double step = 0.25);

std::vector<eval::RttmTurn> to_rttm(std::span<const Turn> turns, const std::string& recording);

// Features of each window, mean-normalized when config.cmn is set.
std::vector<dsp::FeatureMatrix> window_features(const dsp::AudioBuffer& audio,
                                                std::span<const dsp::Window> windows,
                                                const PipelineConfig& config);

// One protocol instance: model and key are shared once, then any number of
// segment batches are hashed.
class PrivateSession {
 public:
  PrivateSession(const PipelineConfig& config, const embed::ModelWeights& weights,
                 const smh::SmhKey& key);
  ~PrivateSession();

  // Hashes as received by the server. Stats cover this call only.
  std::vector<smh::SmhHash> hash_segments(std::span<const dsp::FeatureMatrix> segments,
                                          mpc::NetStats* stats = nullptr);

  mpc::SimNetwork& net();
  mpc::Protocol& proto();
  mpc::SecureOps& ops();
  // Setup, model and key sharing.
  const mpc::NetStats& setup_stats() const;
  // Embeddings of the last batch, still shared (for audits).
  const mpc::Shared& last_embeddings() const;

 private:
  struct State;
  std::unique_ptr<State> s_;
};

// A recording reduced to what clustering needs; threshold sweeps reuse it.
struct PreparedRecording {
  std::string id;
  std::string domain;
  std::vector<dsp::SpeechRegion> regions;
  std::vector<dsp::Window> windows;
  DistanceMatrix distances;
  mpc::NetStats stats;  // private mode only, including setup
};

PreparedRecording prepare(const dsp::Recording& recording, Mode mode, const PipelineConfig& config,
                          const embed::ModelWeights& weights, const smh::SmhKey& key);

std::vector<eval::RttmTurn> diarize(const PreparedRecording& prepared, double threshold);

struct PipelineResult {
  std::vector<eval::RttmTurn> turns;
  mpc::NetStats stats;
};

// Oracle VAD from `reference`, windows, embeddings (plaintext or secure +
// SMH), AHC at `threshold`.
PipelineResult run_pipeline(const dsp::Recording& recording, Mode mode, const PipelineConfig& config,
                            const embed::ModelWeights& weights, const smh::SmhKey& key,
                            double threshold);

struct SweepResult {
  std::vector<double> grid;
  std::vector<double> der;  // overall, per grid point
  double best_threshold = 0;
  double best_der = 0;
  std::map<std::string, std::vector<double>> der_by_domain;
  std::map<std::string, double> best_by_domain;
  std::size_t evaluations = 0;  // clustering runs
};

// DER of every grid threshold over the prepared recordings; the argmin
// breaks ties toward the lower threshold. Also per domain.
SweepResult threshold_sweep(std::span<const PreparedRecording> prepared,
                            const std::vector<eval::RttmTurn>& reference,
                            std::span<const double> grid);

// Hypotheses for all recordings with a threshold per domain (falling back
// to `fallback` for domains not listed).
std::vector<eval::RttmTurn> diarize_all(std::span<const PreparedRecording> prepared,
                                        const std::map<std::string, double>& by_domain,
                                        double fallback);

}  // namespace sharediar::diar
