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

#include "sharediar/embed/tdnn.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>

#include "sharediar/error.h"
#include "sharediar/random.h"
#include "sharediar/simd/kernels.h"

namespace sharediar::embed {
namespace {

constexpr char kMagic[4] = {'X', 'V', 'W', '1'};

TdnnConfig make(int f, std::vector<int> dims, int pooled_mult, std::vector<int> dense) {
  TdnnConfig c;
  const std::vector<std::vector<int>> ctx = {{-2, -1, 0, 1, 2}, {-2, 0, 2}, {-3, 0, 3}, {0}, {0}};
  int in = f;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    c.tdnn.push_back({ctx[i], in, dims[i]});
    in = dims[i];
  }
  c.pooling = pooled_mult == 2 ? Pooling::kMeanStd : Pooling::kMean;
  c.dense = std::move(dense);
  c.tap = 0;
  return c;
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw DataError("weight file truncated");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t{b[3]} << 24);
}

void write_f32(std::ostream& out, double v) {
  const float f = static_cast<float>(v);
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  write_u32(out, bits);
}

double read_f32(std::istream& in) {
  const std::uint32_t bits = read_u32(in);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

// out[o] = b[o] + W[o, :] . x
void affine(const ModelWeights::Layer& l, const double* x, double* out) {
  const auto& k = simd::kernels();
  for (int o = 0; o < l.rows; ++o) {
    out[o] = l.b[o] + k.dot(l.w.data() + static_cast<std::size_t>(o) * l.cols, x, l.cols);
  }
}

}  // namespace

TdnnConfig TdnnConfig::desk(int feat_dim) {
  return make(feat_dim, {32, 32, 32, 32, 96}, 2, {32, 32});
}

TdnnConfig TdnnConfig::full(int feat_dim) {
  return make(feat_dim, {512, 512, 512, 512, 1500}, 2, {512, 512});
}

TdnnConfig TdnnConfig::from_name(const std::string& name, int feat_dim) {
  if (name == "desk") return desk(feat_dim);
  if (name == "full") return full(feat_dim);
  throw ParameterError("unknown TDNN preset '" + name + "'");
}

int TdnnConfig::pooled_dim() const {
  return tdnn.back().out_dim * (pooling == Pooling::kMeanStd ? 2 : 1);
}

int TdnnConfig::min_frames() const {
  int span = 0;
  for (const auto& l : tdnn) span += l.span();
  return span + 1;
}

std::vector<std::pair<int, int>> TdnnConfig::layer_shapes() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& l : tdnn) out.emplace_back(l.out_dim, l.spliced_dim());
  int in = pooled_dim();
  for (int d : dense) {
    out.emplace_back(d, in);
    in = d;
  }
  return out;
}

void TdnnConfig::validate() const {
  if (tdnn.empty() || dense.empty()) throw ParameterError("TDNN needs TDNN and dense layers");
  for (std::size_t i = 0; i < tdnn.size(); ++i) {
    const auto& l = tdnn[i];
    if (l.context.empty() || !std::is_sorted(l.context.begin(), l.context.end())) {
      throw ParameterError("TDNN context offsets must be nonempty and ascending");
    }
    if (l.in_dim <= 0 || l.out_dim <= 0) throw ParameterError("TDNN dims must be positive");
    if (i > 0 && l.in_dim != tdnn[i - 1].out_dim) {
      throw DimensionError("TDNN layer " + std::to_string(i) + " input dim mismatch");
    }
  }
  if (tap < 0 || tap >= static_cast<int>(dense.size())) throw ParameterError("bad embedding tap");
}

ModelWeights ModelWeights::xavier(const TdnnConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  ModelWeights m;
  for (auto [rows, cols] : config.layer_shapes()) {
    Layer l{rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols),
            std::vector<double>(rows, 0.0)};
    const double bound = std::sqrt(6.0 / (rows + cols));
    for (auto& v : l.w) v = static_cast<float>(uniform(rng, -bound, bound));
    m.layers.push_back(std::move(l));
  }
  return m;
}

ModelWeights ModelWeights::zeros(const TdnnConfig& config) {
  config.validate();
  ModelWeights m;
  for (auto [rows, cols] : config.layer_shapes()) {
    m.layers.push_back({rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0),
                        std::vector<double>(rows, 0.0)});
  }
  return m;
}

ModelWeights ModelWeights::quantized(const FixedPointCodec& codec) const {
  ModelWeights q = *this;
  for (auto& l : q.layers) {
    for (auto& v : l.w) v = codec.quantize(v);
    for (auto& v : l.b) v = codec.quantize(v);
  }
  return q;
}

void ModelWeights::check(const TdnnConfig& config) const {
  const auto shapes = config.layer_shapes();
  if (shapes.size() != layers.size()) throw DimensionError("weight layer count mismatch");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& l = layers[i];
    if (l.rows != shapes[i].first || l.cols != shapes[i].second ||
        l.w.size() != static_cast<std::size_t>(l.rows) * l.cols ||
        l.b.size() != static_cast<std::size_t>(l.rows)) {
      throw DimensionError("weight layer " + std::to_string(i) + " has the wrong shape");
    }
  }
}

void ModelWeights::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out.write(kMagic, 4);
  write_u32(out, static_cast<std::uint32_t>(layers.size()));
  for (const auto& l : layers) {
    write_u32(out, static_cast<std::uint32_t>(l.rows));
    write_u32(out, static_cast<std::uint32_t>(l.cols));
  }
  for (const auto& l : layers) {
    for (double v : l.w) write_f32(out, v);
    for (double v : l.b) write_f32(out, v);
  }
}

ModelWeights ModelWeights::load(const std::string& path, const TdnnConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw DataError(path + " is not a weight file");
  const auto shapes = config.layer_shapes();
  ModelWeights m;
  m.layers.resize(read_u32(in));
  if (m.layers.size() != shapes.size()) throw DimensionError("weight layer count mismatch");
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    auto& l = m.layers[i];
    l.rows = static_cast<int>(read_u32(in));
    l.cols = static_cast<int>(read_u32(in));
    if (l.rows != shapes[i].first || l.cols != shapes[i].second) {
      throw DimensionError("weight layer " + std::to_string(i) + " has the wrong shape");
    }
  }
  for (auto& l : m.layers) {
    l.w.resize(static_cast<std::size_t>(l.rows) * l.cols);
    l.b.resize(l.rows);
    for (auto& v : l.w) v = read_f32(in);
    for (auto& v : l.b) v = read_f32(in);
  }
  m.check(config);
  return m;
}

dsp::FeatureMatrix pad_to_min_frames(const dsp::FeatureMatrix& features,
                                     const TdnnConfig& config) {
  const auto need = static_cast<std::size_t>(config.min_frames());
  if (features.frames >= need) return features;
  if (features.frames == 0) throw DimensionError("segment has no frames");
  const std::size_t extra = need - features.frames;
  const std::size_t front = extra / 2;
  dsp::FeatureMatrix out(need, features.dim);
  for (std::size_t t = 0; t < need; ++t) {
    const std::size_t src =
        std::min(features.frames - 1, t < front ? 0 : t - front);
    for (std::size_t d = 0; d < features.dim; ++d) out.at(t, d) = features.at(src, d);
  }
  return out;
}

dsp::FeatureMatrix plaintext_frame_activations(const dsp::FeatureMatrix& features,
                                               const ModelWeights& weights,
                                               const TdnnConfig& config) {
  config.validate();
  weights.check(config);
  if (static_cast<int>(features.dim) != config.input_dim()) {
    throw DimensionError("feature dim " + std::to_string(features.dim) + " != model input " +
                         std::to_string(config.input_dim()));
  }
  dsp::FeatureMatrix x = pad_to_min_frames(features, config);
  for (std::size_t li = 0; li < config.tdnn.size(); ++li) {
    const TdnnLayer& layer = config.tdnn[li];
    const auto& l = weights.layers[li];
    const std::size_t t_out = x.frames - layer.span();
    dsp::FeatureMatrix y(t_out, layer.out_dim);
    std::vector<double> spliced(layer.spliced_dim());
    for (std::size_t t = 0; t < t_out; ++t) {
      const std::size_t center = t - layer.context.front();
      for (std::size_t c = 0; c < layer.context.size(); ++c) {
        const std::size_t src = center + layer.context[c];
        std::copy_n(&x.data[src * x.dim], x.dim, &spliced[c * x.dim]);
      }
      double* out = &y.data[t * y.dim];
      affine(l, spliced.data(), out);
      for (std::size_t o = 0; o < y.dim; ++o) out[o] = std::max(0.0, out[o]);
    }
    x = std::move(y);
  }
  return x;
}

std::vector<double> stats_pool(const dsp::FeatureMatrix& h, Pooling pooling,
                               double variance_floor) {
  if (h.frames == 0) throw DimensionError("pooling over zero frames");
  const std::size_t d = h.dim;
  std::vector<double> pooled(pooling == Pooling::kMeanStd ? 2 * d : d, 0.0);
  for (std::size_t t = 0; t < h.frames; ++t) {
    for (std::size_t j = 0; j < d; ++j) pooled[j] += h.at(t, j);
  }
  for (std::size_t j = 0; j < d; ++j) pooled[j] /= static_cast<double>(h.frames);
  if (pooling == Pooling::kMeanStd) {
    for (std::size_t j = 0; j < d; ++j) {
      // Shifted by the first frame, so constant columns give exactly zero.
      const double origin = h.at(0, j);
      double s1 = 0, s2 = 0;
      for (std::size_t t = 0; t < h.frames; ++t) {
        const double c = h.at(t, j) - origin;
        s1 += c;
        s2 += c * c;
      }
      const double n = static_cast<double>(h.frames);
      const double var = std::max(0.0, (s2 - s1 * s1 / n) / n);
      pooled[d + j] = var >= variance_floor ? std::sqrt(var) : var / std::sqrt(variance_floor);
    }
  }
  return pooled;
}

std::vector<double> plaintext_forward(const dsp::FeatureMatrix& features,
                                      const ModelWeights& weights, const TdnnConfig& config,
                                      double variance_floor) {
  const dsp::FeatureMatrix h = plaintext_frame_activations(features, weights, config);
  std::vector<double> pooled = stats_pool(h, config.pooling, variance_floor);
  std::vector<double> x = std::move(pooled);
  const std::size_t first_dense = config.tdnn.size();
  for (int k = 0; k <= config.tap; ++k) {
    const auto& l = weights.layers[first_dense + k];
    std::vector<double> y(l.rows);
    affine(l, x.data(), y.data());
    if (k < config.tap) {
      for (auto& v : y) v = std::max(0.0, v);
    }
    x = std::move(y);
  }
  return x;
}

void write_embeddings_csv(std::ostream& out,
                          std::span<const std::pair<double, double>> windows,
                          std::span<const std::vector<double>> embeddings) {
  if (windows.size() != embeddings.size()) throw DimensionError("one window per embedding");
  out << std::setprecision(9);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out << std::fixed << std::setprecision(3) << windows[i].first << ','
        << windows[i].second;
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(9);
    for (double v : embeddings[i]) out << ',' << v;
    out << '\n';
  }
}

}  // namespace sharediar::embed
