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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sharediar/dsp/features.h"
#include "sharediar/mpc/network.h"
#include "sharediar/mpc/ops.h"
#include "sharediar/ring.h"

namespace sharediar::embed {

struct TdnnLayer {
  std::vector<int> context;  // frame offsets, ascending
  int in_dim = 0;
  int out_dim = 0;

  int span() const { return context.back() - context.front(); }
  int spliced_dim() const { return in_dim * static_cast<int>(context.size()); }
};

enum class Pooling { kMean, kMeanStd };

// x-vector topology: TDNN layers (splice + affine + ReLU), statistics
// pooling over time, then dense layers. The embedding is the pre-activation
// of dense layer `tap`; nothing after it is evaluated.
struct TdnnConfig {
  std::vector<TdnnLayer> tdnn;
  Pooling pooling = Pooling::kMeanStd;
  std::vector<int> dense;
  int tap = 0;

  // 32,32,32,32,96 -> 192 -> 32,32
  static TdnnConfig desk(int feat_dim = 24);
  // 512,512,512,512,1500 -> 3000 -> 512,512
  static TdnnConfig full(int feat_dim = 24);
  static TdnnConfig from_name(const std::string& name, int feat_dim = 24);

  int input_dim() const { return tdnn.front().in_dim; }
  int pooled_dim() const;
  int embedding_dim() const { return dense.at(tap); }
  // Shortest input producing at least one pooled frame.
  int min_frames() const;
  // Weight matrices in file order: TDNN layers then dense layers.
  std::vector<std::pair<int, int>> layer_shapes() const;

  void validate() const;
};

// Row-major weights (out x in) and biases, one entry per layer_shapes().
// The TDNN input to an affine layer is the spliced vector ordered
// context-major: element c * in_dim + d is coefficient d at offset context[c].
struct ModelWeights {
  struct Layer {
    int rows = 0;
    int cols = 0;
    std::vector<double> w;
    std::vector<double> b;
  };
  std::vector<Layer> layers;

  // Xavier-uniform weights and zero biases. Values are representable as
  // 32-bit floats so that save/load round-trips exactly.
  static ModelWeights xavier(const TdnnConfig& config, std::uint64_t seed);
  static ModelWeights zeros(const TdnnConfig& config);

  // Every parameter rounded to the codec grid.
  ModelWeights quantized(const FixedPointCodec& codec) const;

  void check(const TdnnConfig& config) const;

  void save(const std::string& path) const;
  static ModelWeights load(const std::string& path, const TdnnConfig& config);
};

// Inputs shorter than config.min_frames() are padded by repeating the edge
// frames symmetrically.
dsp::FeatureMatrix pad_to_min_frames(const dsp::FeatureMatrix& features,
                                     const TdnnConfig& config);

// Per-dimension mean (and standard deviation) over frames. Below
// `variance_floor` the deviation is var / sqrt(variance_floor), matching the
// secure pass, which needs its inverse square root argument >= 2^-8; a
// floor of 0 gives the exact deviation everywhere.
std::vector<double> stats_pool(const dsp::FeatureMatrix& activations, Pooling pooling,
                               double variance_floor = 0.0);

// Float reference forward pass.
std::vector<double> plaintext_forward(const dsp::FeatureMatrix& features,
                                      const ModelWeights& weights,
                                      const TdnnConfig& config,
                                      double variance_floor = 0.0);

// Pre-pooling activations of the last TDNN layer, frame-major (T' x dim).
dsp::FeatureMatrix plaintext_frame_activations(const dsp::FeatureMatrix& features,
                                               const ModelWeights& weights,
                                               const TdnnConfig& config);

// Weights secret-shared by their owner under the fixed-point codec.
struct SecureModel {
  TdnnConfig config;
  std::vector<mpc::Shared> w;
  std::vector<mpc::Shared> b;
};

SecureModel share_model(mpc::Protocol& proto, const ModelWeights& weights,
                        const TdnnConfig& config, const FixedPointCodec& codec,
                        mpc::PartyId owner);

// Features of several segments shared by `owner` as one dim x (sum of
// frames) matrix, segments side by side. Returns the frame counts too.
struct SharedFeatures {
  mpc::Shared values;
  std::vector<std::size_t> frames;
};

SharedFeatures share_features(mpc::Protocol& proto,
                              std::span<const dsp::FeatureMatrix> segments,
                              const TdnnConfig& config, const FixedPointCodec& codec,
                              mpc::PartyId owner);

// Secure forward pass for all segments at once; every layer is a single
// matrix product. Returns the embeddings segment-major (S x embedding_dim).
mpc::Shared secure_forward(mpc::SecureOps& ops, const SecureModel& model,
                           const SharedFeatures& features);

struct BatchResult {
  mpc::Shared embeddings;  // S x embedding_dim, segment-major
  mpc::NetStats stats;     // input + online + dealer traffic of this call
};

// Shares the client's features and runs secure_forward in sub-batches of
// at most `sub_batch` segments (bounding memory); rounds are shared within
// a sub-batch.
BatchResult extract_batch(mpc::SecureOps& ops, const SecureModel& model,
                          std::span<const dsp::FeatureMatrix> segments,
                          mpc::PartyId client, std::size_t sub_batch = 16);

// segment_start,segment_end,v0,...,v{d-1}
void write_embeddings_csv(std::ostream& out,
                          std::span<const std::pair<double, double>> windows,
                          std::span<const std::vector<double>> embeddings);

}  // namespace sharediar::embed
