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


#include "sharediar/eval/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "sharediar/error.h"
#include "sharediar/mpc/protocol.h"
#include "sharediar/random.h"

namespace sharediar::eval {
namespace {

constexpr mpc::PartyId kServer = 0;
constexpr mpc::PartyId kClient = 1;

double mb(double bytes) { return bytes / 1e6; }

struct Sample {
  double seconds;
  double extract_bytes;
  double smh_bytes;
  std::uint64_t rounds;
};

Sample measure(const BenchOptions& o, std::size_t batch, int run) {
  const mpc::Scheme scheme = mpc::Scheme::from_name(o.scheme);
  mpc::SimNetwork net(scheme.parties());
  const std::uint64_t seed = o.seed + 1000 * static_cast<std::uint64_t>(run) + batch;
  mpc::Protocol proto(scheme, net, seed);
  mpc::Dealer dealer(proto, seed ^ 0xD1CE, o.trunc);
  mpc::SecureOps ops(proto, dealer, o.codec, o.trunc);
  const auto weights = embed::ModelWeights::xavier(o.tdnn, 42);
  const auto model = embed::share_model(proto, weights, o.tdnn, o.codec, kServer);
  const auto key = smh::SmhKey::generate(o.tdnn.embedding_dim(), o.smh, seed);
  const auto skey = smh::share_key(proto, key, o.codec);

  std::mt19937_64 rng(seed);
  std::vector<dsp::FeatureMatrix> segs;
  for (std::size_t s = 0; s < batch; ++s) {
    dsp::FeatureMatrix f(o.frames, static_cast<std::size_t>(o.tdnn.input_dim()));
    for (auto& v : f.data) v = normal(rng);
    segs.push_back(std::move(f));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const embed::BatchResult r = embed::extract_batch(ops, model, segs, kClient, o.sub_batch);
  const mpc::NetStats before = net.total();
  smh::hash_secure(ops, skey, r.embeddings, batch, kServer);
  const mpc::NetStats h = net.total().since(before);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {secs, r.stats.mean_party_bytes(), h.mean_party_bytes(), r.stats.rounds + h.rounds};
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& o) {
  const mpc::Scheme scheme = mpc::Scheme::from_name(o.scheme);
  if (scheme.kind() == mpc::SchemeKind::kAdditive) throw ParameterError("bench needs rss3 or rss4");
  if (o.batches.empty() || o.runs < 1) throw ParameterError("bench needs batches and runs >= 1");
  const bool four = scheme.kind() == mpc::SchemeKind::kRss4;
  std::vector<BenchRow> rows;
  std::vector<std::size_t> measured, extrapolated;
  for (std::size_t b : o.batches) {
    if (b == 0) throw ParameterError("batch sizes must be positive");
    (b <= o.max_measured ? measured : extrapolated).push_back(b);
  }
  for (std::size_t b : measured) {
    std::vector<Sample> samples;
    for (int r = 0; r < o.runs; ++r) samples.push_back(measure(o, b, r));
    BenchRow row;
    row.protocol = o.scheme;
    row.security = four ? "malicious (abort)" : "semi-honest";
    row.batch = b;
    double sq = 0;
    for (const auto& s : samples) row.time_mean += s.seconds;
    row.time_mean /= static_cast<double>(samples.size());
    for (const auto& s : samples) sq += (s.seconds - row.time_mean) * (s.seconds - row.time_mean);
    row.time_std = samples.size() > 1 ? std::sqrt(sq / static_cast<double>(samples.size() - 1)) : 0.0;
    row.mb_per_party = mb(samples.front().extract_bytes);
    row.smh_mb_per_party = mb(samples.front().smh_bytes);
    row.rounds = samples.front().rounds;
    rows.push_back(row);
  }
  if (!extrapolated.empty()) {
    if (rows.empty()) throw ParameterError("extrapolation needs at least one measured batch");
    const BenchRow base = *std::max_element(
        rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) { return x.batch < y.batch; });
    for (std::size_t b : extrapolated) {
      const double f = static_cast<double>(b) / static_cast<double>(base.batch);
      BenchRow row = base;
      row.batch = b;
      row.time_mean *= f;
      row.time_std *= f;
      row.mb_per_party *= f;
      row.smh_mb_per_party *= f;
      row.estimated = true;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %-18s %7s %20s %14s %12s %8s\n", "Protocol", "Security", "Batch",
                "Time (s)", "Comm. (MB)", "SMH (MB)", "Rounds");
  out << line;
  for (const auto& r : rows) {
    char t[64];
    std::snprintf(t, sizeof t, "%.3f +- %.3f", r.time_mean, r.time_std);
    std::snprintf(line, sizeof line, "%-8s %-18s %7zu %20s %14.3f %12.4f %8llu%s\n", r.protocol.c_str(),
                  r.security.c_str(), r.batch, t, r.mb_per_party, r.smh_mb_per_party,
                  static_cast<unsigned long long>(r.rounds), r.estimated ? " $" : "");
    out << line;
  }
  if (std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.estimated; })) {
    out << "$ linearly estimated from the largest measured batch\n";
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "protocol,security,batch,time_mean_s,time_std_s,comm_mb_per_party,smh_mb_per_party,rounds,estimated\n";
  for (const auto& r : rows) {
    out << r.protocol << ',' << r.security << ',' << r.batch << ',' << r.time_mean << ',' << r.time_std << ','
        << r.mb_per_party << ',' << r.smh_mb_per_party << ',' << r.rounds << ',' << (r.estimated ? 1 : 0) << '\n';
  }
}

}  // namespace sharediar::eval
