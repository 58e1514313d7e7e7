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

#include <array>
#include <algorithm>
#include <numeric>

#include "sharediar/embed/tdnn.h"
#include "sharediar/error.h"

namespace sharediar::embed {
namespace {

using mpc::Protocol;
using mpc::Shared;

// Extra fractional bits for the public 1/T factors of mean pooling.
constexpr int kPoolBits = 4;

class PhaseGuard {
 public:
  PhaseGuard(mpc::SimNetwork& net, mpc::Phase phase) : net_(net), saved_(net.phase()) {
    net_.set_phase(phase);
  }
  ~PhaseGuard() { net_.set_phase(saved_); }
  PhaseGuard(const PhaseGuard&) = delete;
  PhaseGuard& operator=(const PhaseGuard&) = delete;

 private:
  mpc::SimNetwork& net_;
  mpc::Phase saved_;
};

// Broadcasts a per-row vector (size rows) over `cols` columns.
Shared broadcast_rows(const Protocol& proto, const Shared& v, std::size_t cols) {
  std::vector<std::uint32_t> idx(v.size * cols);
  for (std::size_t o = 0; o < v.size; ++o) {
    for (std::size_t j = 0; j < cols; ++j) idx[o * cols + j] = static_cast<std::uint32_t>(o);
  }
  return proto.gather(v, idx);
}

// Sums the columns of each segment: rows x cols -> rows x segments.
Shared segment_sums(const Protocol& proto, const Shared& x, std::size_t rows,
                    const std::vector<std::size_t>& frames) {
  const std::size_t cols = x.size / rows;
  const std::size_t segs = frames.size();
  return proto.map_linear(x, rows * segs, [&](const RingVec& in, RingVec& out) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t off = r * cols;
      for (std::size_t s = 0; s < segs; ++s) {
        std::uint64_t acc = 0;
        for (std::size_t t = 0; t < frames[s]; ++t) acc += in[off + t];
        out[r * segs + s] = acc;
        off += frames[s];
      }
    }
  });
}

}  // namespace

SecureModel share_model(Protocol& proto, const ModelWeights& weights, const TdnnConfig& config,
                        const FixedPointCodec& codec, mpc::PartyId owner) {
  config.validate();
  weights.check(config);
  PhaseGuard guard(proto.net(), mpc::Phase::kInput);
  SecureModel m{config, {}, {}};
  for (const auto& l : weights.layers) {
    m.w.push_back(proto.input(owner, codec.encode(l.w)));
    m.b.push_back(proto.input(owner, codec.encode(l.b)));
  }
  return m;
}

SharedFeatures share_features(Protocol& proto, std::span<const dsp::FeatureMatrix> segments,
                              const TdnnConfig& config, const FixedPointCodec& codec,
                              mpc::PartyId owner) {
  if (segments.empty()) throw DimensionError("no segments to share");
  const auto dim = static_cast<std::size_t>(config.input_dim());
  std::vector<dsp::FeatureMatrix> padded;
  SharedFeatures out;
  std::size_t cols = 0;
  for (const auto& s : segments) {
    if (s.dim != dim) throw DimensionError("feature dim does not match the model");
    padded.push_back(pad_to_min_frames(s, config));
    out.frames.push_back(padded.back().frames);
    cols += padded.back().frames;
  }
  std::vector<double> values(dim * cols);
  std::size_t off = 0;
  for (const auto& s : padded) {
    for (std::size_t t = 0; t < s.frames; ++t) {
      for (std::size_t d = 0; d < dim; ++d) values[d * cols + off + t] = s.at(t, d);
    }
    off += s.frames;
  }
  PhaseGuard guard(proto.net(), mpc::Phase::kInput);
  out.values = proto.input(owner, codec.encode(values));
  return out;
}

Shared secure_forward(mpc::SecureOps& ops, const SecureModel& model,
                      const SharedFeatures& features) {
  Protocol& proto = ops.proto();
  const TdnnConfig& config = model.config;
  PhaseGuard guard(proto.net(), mpc::Phase::kOnline);

  Shared x = features.values;
  std::vector<std::size_t> frames = features.frames;
  const std::size_t segs = frames.size();
  std::size_t dim = static_cast<std::size_t>(config.input_dim());

  for (std::size_t li = 0; li < config.tdnn.size(); ++li) {
    const TdnnLayer& layer = config.tdnn[li];
    const std::size_t cols = std::accumulate(frames.begin(), frames.end(), std::size_t{0});
    std::vector<std::size_t> next(segs);
    for (std::size_t s = 0; s < segs; ++s) next[s] = frames[s] - layer.span();
    const std::size_t cols_out = std::accumulate(next.begin(), next.end(), std::size_t{0});

    // Splice every segment's context windows into one (ctx * dim) x cols_out matrix.
    const std::size_t spliced = layer.context.size() * dim;
    std::vector<std::uint32_t> idx(spliced * cols_out);
    for (std::size_t c = 0; c < layer.context.size(); ++c) {
      const int shift = layer.context[c] - layer.context.front();
      for (std::size_t d = 0; d < dim; ++d) {
        std::uint32_t* row = &idx[(c * dim + d) * cols_out];
        std::size_t in_off = 0, out_off = 0;
        for (std::size_t s = 0; s < segs; ++s) {
          for (std::size_t t = 0; t < next[s]; ++t) {
            row[out_off + t] = static_cast<std::uint32_t>(d * cols + in_off + t + shift);
          }
          in_off += frames[s];
          out_off += next[s];
        }
      }
    }
    const Shared xs = proto.gather(x, idx);
    const auto out_dim = static_cast<std::size_t>(layer.out_dim);
    Shared y = ops.matmul(model.w[li], xs, out_dim, spliced, cols_out);
    y = proto.add(y, broadcast_rows(proto, model.b[li], cols_out));
    x = ops.relu(y);
    frames = std::move(next);
    dim = out_dim;
  }

  // Statistics pooling.
  std::vector<double> inv_t(dim * segs);
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t s = 0; s < segs; ++s) inv_t[d * segs + s] = 1.0 / static_cast<double>(frames[s]);
  }
  const Shared mean = ops.mul_public_fixed(segment_sums(proto, x, dim, frames), inv_t, kPoolBits);
  Shared pooled = mean;
  if (config.pooling == Pooling::kMeanStd) {
    const Shared sq = ops.fmul(x, x);
    const Shared m2 = ops.mul_public_fixed(segment_sums(proto, sq, dim, frames), inv_t, kPoolBits);
    const Shared var = proto.sub(m2, ops.fmul(mean, mean));
    // max(var, eps) = relu(var - eps) + eps keeps inv_sqrt in its domain;
    // var / sqrt(max(var, eps)) is the exact deviation above eps and falls
    // to zero with the variance below it.
    const std::uint64_t eps = ops.codec().encode(mpc::kEpsilonVar).value;
    const Shared clamped = proto.add_public(ops.relu(proto.add_public(var, 0 - eps)), eps);
    const Shared stddev = ops.fmul(var, ops.inv_sqrt(clamped));
    const std::array<const Shared*, 2> parts{&mean, &stddev};
    pooled = Protocol::concat(parts);
  }

  Shared h = pooled;
  std::size_t h_dim = static_cast<std::size_t>(config.pooled_dim());
  const std::size_t first_dense = config.tdnn.size();
  for (int k = 0; k <= config.tap; ++k) {
    const auto rows = static_cast<std::size_t>(config.dense[k]);
    Shared y = ops.matmul(model.w[first_dense + k], h, rows, h_dim, segs);
    y = proto.add(y, broadcast_rows(proto, model.b[first_dense + k], segs));
    h = k < config.tap ? ops.relu(y) : y;
    h_dim = rows;
  }

  // rows x segments -> segments x rows
  std::vector<std::uint32_t> idx(segs * h_dim);
  for (std::size_t s = 0; s < segs; ++s) {
    for (std::size_t e = 0; e < h_dim; ++e) idx[s * h_dim + e] = static_cast<std::uint32_t>(e * segs + s);
  }
  return proto.gather(h, idx);
}

BatchResult extract_batch(mpc::SecureOps& ops, const SecureModel& model,
                          std::span<const dsp::FeatureMatrix> segments, mpc::PartyId client,
                          std::size_t sub_batch) {
  if (segments.empty()) throw DimensionError("extract_batch needs at least one segment");
  if (sub_batch == 0) throw ParameterError("sub_batch must be positive");
  Protocol& proto = ops.proto();
  const mpc::NetStats before = proto.net().total();
  std::vector<Shared> parts;
  for (std::size_t begin = 0; begin < segments.size(); begin += sub_batch) {
    const std::size_t count = std::min(sub_batch, segments.size() - begin);
    const SharedFeatures f =
        share_features(proto, segments.subspan(begin, count), model.config, ops.codec(), client);
    parts.push_back(secure_forward(ops, model, f));
  }
  std::vector<const Shared*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  BatchResult out;
  out.embeddings = Protocol::concat(ptrs);
  out.stats = proto.net().total().since(before);
  return out;
}

}  // namespace sharediar::embed
