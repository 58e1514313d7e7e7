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
#include <string>
#include <vector>

#include "sharediar/dsp/audio.h"
#include "sharediar/eval/rttm.h"

namespace sharediar::dsp {

// Seeded synthetic conversations. Each speaker is a harmonic source at a
// fixed pitch shaped by a small inventory of formant envelopes (its
// "phones"), plus a little colored noise; a recording alternates speakers
// in non-overlapping turns separated by optional pauses.
struct CorpusConfig {
  int recordings = 10;
  int min_speakers = 2;
  int max_speakers = 4;
  double duration = 60.0;  // seconds per recording
  int sample_rate = 16000;
  double min_turn = 2.0;
  double max_turn = 8.0;
  // Scales every speaker's envelope in dB. Larger values spread feature
  // vectors (and so embeddings) further apart without changing directions.
  double contrast = 1.0;
  std::string domain = "synth";
  std::uint64_t seed = 1;

  void validate() const;
};

struct Recording {
  std::string id;
  std::string domain;
  AudioBuffer audio;
  std::vector<eval::RttmTurn> turns;
};

std::vector<Recording> generate_corpus(const CorpusConfig& config);

// <dir>/<id>.wav, <dir>/<id>.rttm and <dir>/corpus.lst ("<id> <domain>").
// With `append` the list is extended instead of replaced.
void save_corpus(const std::string& dir, const std::vector<Recording>& recordings,
                 bool append = false);
std::vector<Recording> load_corpus(const std::string& dir);

}  // namespace sharediar::dsp
