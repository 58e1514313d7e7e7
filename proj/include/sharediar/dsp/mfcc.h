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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "sharediar/dsp/audio.h"
#include "sharediar/dsp/features.h"

namespace sharediar::dsp {

// In-place iterative radix-2 transform; size must be a power of two.
void fft(std::vector<std::complex<double>>& x);

double hz_to_mel(double hz);  // HTK: 2595 log10(1 + hz / 700)
double mel_to_hz(double mel);

struct MfccConfig {
  int n_coeffs = 24;
  double frame_len = 0.025;    // seconds
  double frame_shift = 0.010;  // seconds
  int n_mels = 40;
  double pre_emphasis = 0.97;
  double log_floor = 1e-10;
  double low_hz = 0.0;
  double high_hz = 0.0;  // 0 means Nyquist

  void validate(int sample_rate) const;
};

// Triangular filters spaced evenly on the mel scale between low_hz and
// high_hz, evaluated at the bins of an n_fft-point transform.
class MelFilterbank {
 public:
  MelFilterbank(const MfccConfig& config, int sample_rate, std::size_t n_fft);

  std::size_t size() const { return centers_.size(); }
  double center_hz(std::size_t m) const { return centers_[m]; }
  // power has n_fft / 2 + 1 bins.
  std::vector<double> apply(const std::vector<double>& power) const;

 private:
  struct Filter {
    std::size_t first = 0;
    std::vector<double> weights;
  };
  std::vector<double> centers_;
  std::vector<Filter> filters_;
};

// Number of frames for `samples` input samples (0 if shorter than a frame).
std::size_t frame_count(std::size_t samples, int sample_rate, const MfccConfig& config);

// Per-frame mel filterbank energies before the log, T x n_mels.
FeatureMatrix mel_energies(const AudioBuffer& audio, const MfccConfig& config);

// pre-emphasis, Hamming window, zero-padded power spectrum, mel energies,
// floored log, DCT-II (unnormalized), first n_coeffs kept. T x n_coeffs.
FeatureMatrix mfcc(const AudioBuffer& audio, const MfccConfig& config = {});

// Subtracts the per-coefficient mean over frames.
void mean_normalize(FeatureMatrix& features);

// frame,c0,...,c{F-1}
void write_features_csv(std::ostream& out, const FeatureMatrix& features);

}  // namespace sharediar::dsp
