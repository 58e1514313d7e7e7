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

#include <map>
#include <string>
#include <vector>

#include "sharediar/eval/rttm.h"

namespace sharediar::eval {

struct ScoreOptions {
  double collar = 0.0;        // seconds excluded on each side of reference boundaries
  bool score_overlap = true;  // false skips regions with overlapping reference speech
};

// Raw error durations in seconds, summable across recordings.
struct ErrorTally {
  double ref_speech = 0;
  double missed = 0;
  double false_alarm = 0;
  double confusion = 0;
  double jaccard_error_sum = 0;  // sum over reference speakers of 1 - IoU
  int ref_speakers = 0;

  ErrorTally& operator+=(const ErrorTally& o);
};

// Percentages. der = missed + false_alarm + confusion.
struct ScoreReport {
  double der = 0;
  double jer = 0;
  double missed = 0;
  double false_alarm = 0;
  double confusion = 0;
  double ref_speech = 0;  // seconds

  static ScoreReport from(const ErrorTally& t);
};

// Maximum-weight assignment on a rows x cols weight matrix (row-major).
// Returns, for each row, its column or -1.
std::vector<int> max_weight_assignment(const std::vector<double>& weight, int rows, int cols);

// One recording. Speakers are mapped one-to-one by maximum total overlap.
// JER: per reference speaker, 1 - |ref & mapped hyp| / |ref | mapped hyp|
// (1 when unmapped), averaged over reference speakers.
ErrorTally score_recording(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                           const ScoreOptions& options = {});

// All recordings present in either input; mapping is per recording.
ScoreReport der(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                const ScoreOptions& options = {});
double jer(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp);

struct CorpusScore {
  ScoreReport overall;
  std::map<std::string, ScoreReport> by_domain;
};

// `domain_of` maps recording ids to domain names; unknown ids go to "-".
CorpusScore score_corpus(const std::vector<RttmTurn>& ref, const std::vector<RttmTurn>& hyp,
                         const std::map<std::string, std::string>& domain_of,
                         const ScoreOptions& options = {});

}  // namespace sharediar::eval
