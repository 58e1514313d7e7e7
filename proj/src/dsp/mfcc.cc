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


#include "sharediar/dsp/mfcc.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <utility>

#include "sharediar/error.h"

namespace sharediar::dsp {

void fft(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (n == 0 || !std::has_single_bit(n)) throw ParameterError("fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = x[i + k];
        const auto v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

void MfccConfig::validate(int sample_rate) const {
  if (sample_rate <= 0) throw ParameterError("sample rate must be positive");
  if (frame_len <= 0 || frame_shift <= 0) throw ParameterError("frame length and shift must be positive");
  if (n_mels < 1) throw ParameterError("n_mels must be positive");
  if (n_coeffs < 1 || n_coeffs > n_mels) throw ParameterError("n_coeffs must be in [1, n_mels]");
  if (log_floor <= 0) throw ParameterError("log floor must be positive");
  const double nyquist = sample_rate / 2.0;
  const double high = high_hz > 0 ? high_hz : nyquist;
  if (low_hz < 0 || high <= low_hz || high > nyquist) throw ParameterError("bad filterbank range");
  if (std::lround(frame_len * sample_rate) < 2) throw ParameterError("frame shorter than two samples");
}

MelFilterbank::MelFilterbank(const MfccConfig& config, int sample_rate, std::size_t n_fft) {
  const double high = config.high_hz > 0 ? config.high_hz : sample_rate / 2.0;
  const double mlo = hz_to_mel(config.low_hz);
  const double mhi = hz_to_mel(high);
  const int m = config.n_mels;
  const double step = (mhi - mlo) / (m + 1);
  const std::size_t bins = n_fft / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(n_fft);
  for (int i = 0; i < m; ++i) {
    const double left = mlo + i * step;
    const double center = left + step;
    const double right = center + step;
    centers_.push_back(mel_to_hz(center));
    Filter f;
    bool started = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double mel = hz_to_mel(static_cast<double>(k) * bin_hz);
      double wt = 0;
      if (mel > left && mel < right) {
        wt = mel <= center ? (mel - left) / step : (right - mel) / step;
      }
      if (wt > 0) {
        if (!started) f.first = k;
        started = true;
        f.weights.resize(k - f.first + 1, 0.0);
        f.weights.back() = wt;
      }
    }
    filters_.push_back(std::move(f));
  }
}

std::vector<double> MelFilterbank::apply(const std::vector<double>& power) const {
  std::vector<double> out(filters_.size(), 0.0);
  for (std::size_t i = 0; i < filters_.size(); ++i) {
    const Filter& f = filters_[i];
    double acc = 0;
    for (std::size_t j = 0; j < f.weights.size(); ++j) acc += f.weights[j] * power[f.first + j];
    out[i] = acc;
  }
  return out;
}

std::size_t frame_count(std::size_t samples, int sample_rate, const MfccConfig& config) {
  const auto len = static_cast<std::size_t>(std::lround(config.frame_len * sample_rate));
  const auto shift = static_cast<std::size_t>(std::lround(config.frame_shift * sample_rate));
  if (samples < len || shift == 0) return 0;
  return 1 + (samples - len) / shift;
}

FeatureMatrix mel_energies(const AudioBuffer& audio, const MfccConfig& config) {
  config.validate(audio.sample_rate);
  const auto len = static_cast<std::size_t>(std::lround(config.frame_len * audio.sample_rate));
  const auto shift = static_cast<std::size_t>(std::lround(config.frame_shift * audio.sample_rate));
  const std::size_t frames = frame_count(audio.samples.size(), audio.sample_rate, config);
  if (frames == 0) throw DataError("audio shorter than one frame");
  const std::size_t n_fft = std::bit_ceil(len);
  const MelFilterbank bank(config, audio.sample_rate, n_fft);

  std::vector<double> window(len);
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / static_cast<double>(len - 1));
  }
  FeatureMatrix out(frames, bank.size());
  std::vector<std::complex<double>> buf(n_fft);
  std::vector<double> power(n_fft / 2 + 1);
  for (std::size_t t = 0; t < frames; ++t) {
    const double* x = &audio.samples[t * shift];
    std::fill(buf.begin(), buf.end(), std::complex<double>{});
    for (std::size_t i = 0; i < len; ++i) {
      // The first sample is emphasized against itself.
      const double prev = i == 0 ? x[0] : x[i - 1];
      buf[i] = (x[i] - config.pre_emphasis * prev) * window[i];
    }
    fft(buf);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
    const auto e = bank.apply(power);
    std::copy(e.begin(), e.end(), &out.data[t * out.dim]);
  }
  return out;
}

FeatureMatrix mfcc(const AudioBuffer& audio, const MfccConfig& config) {
  const FeatureMatrix e = mel_energies(audio, config);
  const std::size_t m = e.dim;
  const auto nc = static_cast<std::size_t>(config.n_coeffs);
  std::vector<double> basis(nc * m);
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      basis[i * m + j] = std::cos(std::numbers::pi * i * (j + 0.5) / static_cast<double>(m));
    }
  }
  FeatureMatrix out(e.frames, nc);
  std::vector<double> logs(m);
  for (std::size_t t = 0; t < e.frames; ++t) {
    for (std::size_t j = 0; j < m; ++j) logs[j] = std::log(std::max(e.at(t, j), config.log_floor));
    for (std::size_t i = 0; i < nc; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += basis[i * m + j] * logs[j];
      out.at(t, i) = acc;
    }
  }
  return out;
}

void mean_normalize(FeatureMatrix& features) {
  if (features.frames == 0) return;
  for (std::size_t d = 0; d < features.dim; ++d) {
    double mean = 0;
    for (std::size_t t = 0; t < features.frames; ++t) mean += features.at(t, d);
    mean /= static_cast<double>(features.frames);
    for (std::size_t t = 0; t < features.frames; ++t) features.at(t, d) -= mean;
  }
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features) {
  out << "frame";
  for (std::size_t d = 0; d < features.dim; ++d) out << ",c" << d;
  out << '\n';
  const auto prec = out.precision(9);
  for (std::size_t t = 0; t < features.frames; ++t) {
    out << t;
    for (std::size_t d = 0; d < features.dim; ++d) out << ',' << features.at(t, d);
    out << '\n';
  }
  out.precision(prec);
}

}  // namespace sharediar::dsp
