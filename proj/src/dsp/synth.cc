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


#include "sharediar/dsp/synth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "sharediar/error.h"
#include "sharediar/random.h"

namespace sharediar::dsp {
namespace {

constexpr int kPhones = 3;
constexpr int kFormants = 3;
constexpr double kHop = 0.005;         // envelope update interval, seconds
constexpr double kTransition = 0.02;   // crossfade between phones
constexpr double kTurnRms = 0.1;

struct Formant {
  double log_center;
  double log_width;
  double gain_db;
};

struct Voice {
  double f0;
  double tilt_db_per_oct;
  double noise_db;
  std::vector<std::vector<Formant>> phones;

  double envelope_db(int phone, double hz) const {
    const double lf = std::log(std::max(hz, 50.0));
    double db = tilt_db_per_oct * std::log2(std::max(hz, 50.0) / 500.0);
    for (const auto& f : phones[phone]) {
      const double z = (lf - f.log_center) / f.log_width;
      db += f.gain_db * std::exp(-0.5 * z * z);
    }
    return db;
  }
};

Voice draw_voice(std::mt19937_64& rng) {
  Voice v;
  v.f0 = std::exp(uniform(rng, std::log(90.0), std::log(260.0)));
  v.tilt_db_per_oct = uniform(rng, -9.0, -3.0);
  v.noise_db = uniform(rng, -30.0, -20.0);
  for (int p = 0; p < kPhones; ++p) {
    std::vector<Formant> fs;
    for (int k = 0; k < kFormants; ++k) {
      fs.push_back({uniform(rng, std::log(250.0), std::log(4500.0)), uniform(rng, 0.08, 0.25),
                    uniform(rng, 8.0, 24.0)});
    }
    v.phones.push_back(std::move(fs));
  }
  return v;
}

// Renders `seconds` of one speaker; the result has unit-free amplitude and
// is normalized by the caller.
std::vector<double> render(const Voice& v, double seconds, double contrast, int sr,
                           std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sr));
  std::vector<double> out(n, 0.0);
  const int harmonics = std::max(1, static_cast<int>(0.45 * sr / v.f0));
  const auto hop = static_cast<std::size_t>(std::lround(kHop * sr));

  // Phone sequence with 60-200 ms dwell times.
  std::vector<std::pair<std::size_t, int>> seq;  // (start sample, phone)
  for (std::size_t at = 0; at < n;) {
    int p = static_cast<int>(uniform_int(rng, kPhones));
    if (!seq.empty() && p == seq.back().second) p = (p + 1) % kPhones;
    seq.push_back({at, p});
    at += static_cast<std::size_t>(uniform(rng, 0.06, 0.2) * sr);
  }

  std::vector<std::vector<double>> amp(kPhones, std::vector<double>(harmonics));
  for (int p = 0; p < kPhones; ++p) {
    for (int h = 0; h < harmonics; ++h) {
      amp[p][h] = std::pow(10.0, contrast * v.envelope_db(p, (h + 1) * v.f0) / 20.0);
    }
  }
  std::vector<std::complex<double>> phasor(harmonics), rot(harmonics);
  for (int h = 0; h < harmonics; ++h) {
    phasor[h] = std::polar(1.0, uniform(rng, 0.0, 2 * std::numbers::pi));
    rot[h] = std::polar(1.0, 2 * std::numbers::pi * (h + 1) * v.f0 / sr);
  }
  const auto fade = static_cast<double>(kTransition * sr);
  std::vector<double> cur(harmonics), nxt(harmonics);
  std::size_t si = 0;
  for (std::size_t b = 0; b < n; b += hop) {
    while (si + 1 < seq.size() && seq[si + 1].first <= b) ++si;
    // Blend toward the next phone over the last `fade` samples of this one.
    const int p = seq[si].second;
    double mix = 0;
    int q = p;
    if (si + 1 < seq.size()) {
      q = seq[si + 1].second;
      const double left = static_cast<double>(seq[si + 1].first) - static_cast<double>(b);
      mix = std::clamp(1.0 - left / fade, 0.0, 1.0);
    }
    const std::size_t e = std::min(n, b + hop);
    for (int h = 0; h < harmonics; ++h) {
      const double a = (1 - mix) * amp[p][h] + mix * amp[q][h];
      for (std::size_t i = b; i < e; ++i) {
        out[i] += a * phasor[h].imag();
        phasor[h] *= rot[h];
      }
      phasor[h] /= std::abs(phasor[h]);
    }
  }

  double rms = 0;
  for (double x : out) rms += x * x;
  rms = std::sqrt(rms / std::max<std::size_t>(n, 1));
  const double noise = rms * std::pow(10.0, v.noise_db / 20.0);
  double lp = 0;
  for (auto& x : out) {
    lp = 0.7 * lp + 0.3 * normal(rng);
    x += noise * lp * 2.0;
  }
  return out;
}

}  // namespace

void CorpusConfig::validate() const {
  if (recordings < 1) throw ParameterError("corpus needs at least one recording");
  if (min_speakers < 1 || max_speakers < min_speakers) throw ParameterError("bad speaker range");
  if (sample_rate < 8000) throw ParameterError("sample rate below 8 kHz");
  if (!(min_turn > 0) || max_turn < min_turn) throw ParameterError("bad turn length range");
  if (duration < min_turn * max_speakers) throw ParameterError("recording too short for its speakers");
  if (!(contrast > 0)) throw ParameterError("contrast must be positive");
  if (domain.empty() || domain.find_first_of(" \t\n") != std::string::npos) {
    throw ParameterError("domain must be a single non-empty token");
  }
}

std::vector<Recording> generate_corpus(const CorpusConfig& config) {
  config.validate();
  std::vector<Recording> out;
  for (int r = 0; r < config.recordings; ++r) {
    std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(r));
    const int speakers = config.min_speakers +
        static_cast<int>(uniform_int(rng, config.max_speakers - config.min_speakers + 1));
    std::vector<Voice> voices;
    for (int s = 0; s < speakers; ++s) voices.push_back(draw_voice(rng));

    Recording rec;
    char id[64];
    std::snprintf(id, sizeof id, "%s_%03d", config.domain.c_str(), r);
    rec.id = id;
    rec.domain = config.domain;
    rec.audio.sample_rate = config.sample_rate;
    const auto total = static_cast<std::size_t>(std::lround(config.duration * config.sample_rate));
    rec.audio.samples.assign(total, 0.0);

    double t = uniform(rng, 0.2, 1.0);
    int prev = -1;
    int turn = 0;
    while (t + config.min_turn <= config.duration) {
      int s;
      if (turn < speakers) {
        s = turn;  // everyone speaks at least once
      } else {
        s = static_cast<int>(uniform_int(rng, speakers - 1));
        if (s >= prev) ++s;
      }
      // Turn boundaries sit on sample positions so consecutive turns abut exactly.
      const auto begin = static_cast<std::size_t>(std::lround(t * config.sample_rate));
      const double want = std::min(uniform(rng, config.min_turn, config.max_turn), config.duration - t);
      const std::size_t len = std::min(total - begin, static_cast<std::size_t>(std::lround(want * config.sample_rate)));
      const double len_s = static_cast<double>(len) / config.sample_rate;
      auto audio = render(voices[s], len_s, config.contrast, config.sample_rate, rng);
      double rms = 0;
      for (double x : audio) rms += x * x;
      rms = std::sqrt(rms / static_cast<double>(audio.size()));
      const double gain = kTurnRms * std::pow(10.0, uniform(rng, -3.0, 3.0) / 20.0) / rms;
      for (std::size_t i = 0; i < audio.size() && begin + i < total; ++i) {
        rec.audio.samples[begin + i] += gain * audio[i];
      }
      rec.turns.push_back({rec.id, static_cast<double>(begin) / config.sample_rate, len_s,
                           "spk" + std::to_string(s)});
      const double end_t = static_cast<double>(begin + len) / config.sample_rate;
      prev = s;
      ++turn;
      t = end_t + (uniform01(rng) < 0.5 ? uniform(rng, 0.2, 1.0) : 0.0);
    }
    // Faint background so silence is not digital zero.
    for (auto& x : rec.audio.samples) x += 1e-4 * normal(rng);
    out.push_back(std::move(rec));
  }
  return out;
}

void save_corpus(const std::string& dir, const std::vector<Recording>& recordings, bool append) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream list(fs::path(dir) / "corpus.lst", append ? std::ios::app : std::ios::trunc);
  if (!list) throw DataError("cannot write corpus list in " + dir);
  for (const auto& r : recordings) {
    write_wav((fs::path(dir) / (r.id + ".wav")).string(), r.audio);
    eval::write_rttm((fs::path(dir) / (r.id + ".rttm")).string(), r.turns);
    list << r.id << ' ' << r.domain << '\n';
  }
}

std::vector<Recording> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream list(fs::path(dir) / "corpus.lst");
  if (!list) throw DataError("no corpus.lst in " + dir);
  std::vector<Recording> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(list, line)) {
    ++lineno;
    std::istringstream ss(line);
    Recording r;
    if (!(ss >> r.id)) continue;
    if (!(ss >> r.domain)) throw ParseError(lineno, "expected '<id> <domain>'");
    r.audio = read_wav((fs::path(dir) / (r.id + ".wav")).string());
    r.turns = eval::read_rttm((fs::path(dir) / (r.id + ".rttm")).string());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sharediar::dsp
