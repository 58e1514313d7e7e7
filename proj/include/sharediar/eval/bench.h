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
#include <string>
#include <vector>

#include "sharediar/embed/tdnn.h"
#include "sharediar/mpc/ops.h"
#include "sharediar/smh/smh.h"

namespace sharediar::eval {

struct BenchOptions {
  std::string scheme = "rss3";
  std::vector<std::size_t> batches{16, 64, 256};
  int runs = 5;
  // Larger batches are extrapolated linearly from the largest measured one.
  std::size_t max_measured = 256;
  std::size_t frames = 150;  // per segment (1.5 s at 10 ms)
  embed::TdnnConfig tdnn = embed::TdnnConfig::desk();
  smh::SmhParams smh;
  FixedPointCodec codec;
  mpc::TruncConfig trunc;
  std::size_t sub_batch = 16;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string protocol;
  std::string security;
  std::size_t batch = 0;
  double time_mean = 0;  // seconds, extraction + hashing
  double time_std = 0;
  double mb_per_party = 0;      // extraction, mean over parties
  double smh_mb_per_party = 0;  // hashing alone
  std::uint64_t rounds = 0;
  bool estimated = false;
};

std::vector<BenchRow> run_bench(const BenchOptions& options);

// Aligned text; estimated rows carry a trailing "$".
void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace sharediar::eval
