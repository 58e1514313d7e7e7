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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

#include "sharediar/error.h"
#include "sharediar/eval/bench.h"
#include "sharediar/eval/config.h"
#include "sharediar/eval/rttm.h"
#include "sharediar/eval/score.h"
#include "sharediar/random.h"

namespace sharediar::eval {
namespace {

RttmTurn t(const char* spk, double a, double b, const char* rec = "r1") { return {rec, a, b - a, spk}; }

TEST(Rttm, EmptyInput) {
  EXPECT_TRUE(parse_rttm("").empty());
  EXPECT_TRUE(parse_rttm("\n\n;; comment\n").empty());
  EXPECT_EQ(emit_rttm({}), "");
}

TEST(Rttm, RoundTripCanonical) {
  const std::string canonical =
      "SPEAKER rec1 1 0.000 1.500 <NA> <NA> alice <NA> <NA>\n"
      "SPEAKER rec1 1 1.500 2.250 <NA> <NA> bob <NA> <NA>\n"
      "SPEAKER rec2 1 10.125 0.010 <NA> <NA> alice <NA> <NA>\n";
  EXPECT_EQ(emit_rttm(parse_rttm(canonical)), canonical);
  const std::string loose =
      "# header\nSPEAKER  rec1 1 0 1.5 <NA> <NA> alice <NA> <NA>\r\n"
      "SPKR-INFO rec1 1 <NA> <NA> <NA> unknown alice <NA> <NA>\n"
      "SPEAKER\trec1 1 1.5000 2.25 <NA> <NA> bob\n"
      "SPEAKER rec2 1 10.125 0.01 <NA> <NA> alice <NA> <NA>";
  EXPECT_EQ(emit_rttm(parse_rttm(loose)), canonical);
}

TEST(Rttm, MalformedLineNumber) {
  const std::string text =
      "SPEAKER r 1 0 1 <NA> <NA> a <NA> <NA>\n"
      "SPEAKER r 1 zero 1 <NA> <NA> a <NA> <NA>\n";
  try {
    parse_rttm(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_rttm("SPEAKER r 1 0\n"), ParseError);
  EXPECT_THROW(parse_rttm("SPEAKER r 1 -1 1 <NA> <NA> a\n"), ParseError);
  EXPECT_THROW(parse_rttm("SPEAKER r 1 1 0 <NA> <NA> a\n"), ParseError);
  EXPECT_THROW(parse_rttm("SPEAKER r 1 1 nan <NA> <NA> a\n"), ParseError);
}

TEST(Rttm, FuzzNeverCrashes) {
  std::mt19937_64 rng(1);
  const std::string valid = "SPEAKER r 1 0.5 1.25 <NA> <NA> spk <NA> <NA>\n";
  int parsed = 0, rejected = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::string s;
    if (trial % 2 == 0) {
      const std::size_t n = uniform_int(rng, 200);
      for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(uniform_int(rng, 256)));
    } else {
      s = valid + valid;
      for (int k = 0; k < 3; ++k) s[uniform_int(rng, s.size())] = static_cast<char>(uniform_int(rng, 256));
    }
    try {
      const auto turns = parse_rttm(s);
      for (const auto& x : turns) ASSERT_GT(x.duration, 0);
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  EXPECT_GT(parsed, 0);
  EXPECT_GT(rejected, 0);
}

TEST(Der, IdenticalIsZero) {
  const std::vector<RttmTurn> ref{t("A", 0, 3), t("B", 3, 5), t("A", 6, 9)};
  const ScoreReport s = der(ref, ref);
  EXPECT_EQ(s.der, 0.0);
  EXPECT_EQ(s.jer, 0.0);
  EXPECT_DOUBLE_EQ(s.ref_speech, 8.0);
}

TEST(Der, EmptyHypothesisIsAllMissed) {
  const std::vector<RttmTurn> ref{t("A", 0, 3), t("B", 3, 5)};
  const ScoreReport s = der(ref, {});
  EXPECT_DOUBLE_EQ(s.der, 100.0);
  EXPECT_DOUBLE_EQ(s.missed, 100.0);
  EXPECT_DOUBLE_EQ(s.jer, 100.0);
}

TEST(Der, HandCaseTwentyPercent) {
  const std::vector<RttmTurn> ref{t("A", 0, 10)};
  const std::vector<RttmTurn> hyp{t("spk1", 0, 8), t("spk2", 8, 10)};
  const ScoreReport s = der(ref, hyp);
  EXPECT_NEAR(s.der, 20.0, 1e-9);
  EXPECT_NEAR(s.confusion, 20.0, 1e-9);
  EXPECT_EQ(s.missed, 0.0);
  EXPECT_EQ(s.false_alarm, 0.0);
}

TEST(Der, FalseAlarmAndOverlap) {
  // B overlaps A on [4, 5]; hyp only knows one speaker.
  const std::vector<RttmTurn> ref{t("A", 0, 5), t("B", 4, 6)};
  const std::vector<RttmTurn> hyp{t("x", 0, 6), t("y", 7, 8)};
  const ScoreReport s = der(ref, hyp);
  // ref speech 7 s; missed 1 s (overlap); FA 1 s (y); confusion: [5,6] B->x mismatch 1 s.
  EXPECT_NEAR(s.missed, 100.0 / 7, 1e-9);
  EXPECT_NEAR(s.false_alarm, 100.0 / 7, 1e-9);
  EXPECT_NEAR(s.confusion, 100.0 / 7, 1e-9);
  EXPECT_NEAR(s.der, s.missed + s.false_alarm + s.confusion, 1e-12);
  ScoreOptions no_overlap;
  no_overlap.score_overlap = false;
  EXPECT_NEAR(der(ref, hyp, no_overlap).ref_speech, 5.0, 1e-12);
}

TEST(Der, Collar) {
  const std::vector<RttmTurn> ref{t("A", 0, 5), t("B", 5, 10)};
  const std::vector<RttmTurn> hyp{t("x", 0, 5.2), t("y", 5.2, 10)};
  EXPECT_GT(der(ref, hyp).der, 0.0);
  ScoreOptions c;
  c.collar = 0.25;
  EXPECT_EQ(der(ref, hyp, c).der, 0.0);
}

TEST(Jer, Examples) {
  const std::vector<RttmTurn> ref{t("A", 0, 4), t("B", 5, 9)};
  EXPECT_EQ(jer(ref, ref), 0.0);
  const std::vector<RttmTurn> one{t("x", 0, 4)};
  EXPECT_NEAR(jer(ref, one), 50.0, 1e-9);
  // Half-overlapping hypothesis: IoU = 2 / 6.
  const std::vector<RttmTurn> shifted{t("x", 2, 6)};
  const std::vector<RttmTurn> single{t("A", 0, 4)};
  EXPECT_NEAR(jer(single, shifted), 100.0 * (1 - 2.0 / 6), 1e-9);
}

TEST(Der, MatchesGridOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ref = oracle::random_turns(rng, 1 + static_cast<int>(uniform_int(rng, 4)), "R", trial % 2 == 0);
    const auto hyp = oracle::random_turns(rng, 1 + static_cast<int>(uniform_int(rng, 4)), "H", true);
    ASSERT_NEAR(der(ref, hyp).der, oracle::grid_der(ref, hyp), 0.05) << "trial " << trial;
  }
}

TEST(Der, InvariantUnderHypRelabeling) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ref = oracle::random_turns(rng, 3, "R", true);
    auto hyp = oracle::random_turns(rng, 3, "H", true);
    const double before = der(ref, hyp).der;
    for (auto& x : hyp) x.speaker = "new_" + std::string(1, static_cast<char>('z' - (x.speaker.back() - '0')));
    EXPECT_NEAR(der(ref, hyp).der, before, 1e-9);
  }
}

TEST(Der, JitterIsSmall) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ref = oracle::random_turns(rng, 3, "R", false);
    auto hyp = ref;
    for (auto& x : hyp) {
      const double a = x.onset + uniform(rng, 0, 0.001);
      const double b = x.end() - uniform(rng, 0, 0.001);
      x.onset = a;
      x.duration = b - a;
    }
    EXPECT_LE(der(ref, hyp).der, 0.1);
  }
}

TEST(Jer, BoundsOnFuzz) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ref = oracle::random_turns(rng, 1 + static_cast<int>(uniform_int(rng, 4)), "R", true);
    const auto hyp = oracle::random_turns(rng, static_cast<int>(uniform_int(rng, 5)), "H", true);
    const double j = jer(ref, hyp);
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 100.0);
  }
}

TEST(Der, PerRecordingMappingAndDomains) {
  // Same hyp label across recordings can map to different ref speakers.
  const std::vector<RttmTurn> ref{t("A", 0, 5, "r1"), t("B", 0, 5, "r2")};
  const std::vector<RttmTurn> hyp{t("x", 0, 5, "r1"), t("x", 0, 5, "r2")};
  EXPECT_EQ(der(ref, hyp).der, 0.0);
  const std::vector<RttmTurn> miss{t("x", 0, 5, "r1")};
  const CorpusScore cs = score_corpus(ref, miss, {{"r1", "d1"}, {"r2", "d2"}});
  EXPECT_NEAR(cs.overall.der, 50.0, 1e-9);
  EXPECT_EQ(cs.by_domain.at("d1").der, 0.0);
  EXPECT_EQ(cs.by_domain.at("d2").der, 100.0);
}

TEST(Assignment, MatchesExhaustive) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(uniform_int(rng, 5));
    const int cols = 1 + static_cast<int>(uniform_int(rng, 5));
    std::vector<double> w(static_cast<std::size_t>(rows * cols));
    for (auto& x : w) x = uniform01(rng) < 0.3 ? 0.0 : uniform(rng, 0, 10);
    const auto m = max_weight_assignment(w, rows, cols);
    double got = 0;
    std::vector<bool> used(cols, false);
    for (int i = 0; i < rows; ++i) {
      if (m[i] < 0) continue;
      ASSERT_FALSE(used[m[i]]);
      used[m[i]] = true;
      got += w[static_cast<std::size_t>(i * cols + m[i])];
    }
    double best = 0;
    std::vector<bool> u(cols, false);
    auto rec = [&](auto&& self, int i, double acc) -> void {
      if (i == rows) {
        best = std::max(best, acc);
        return;
      }
      self(self, i + 1, acc);
      for (int j = 0; j < cols; ++j) {
        if (u[j]) continue;
        u[j] = true;
        self(self, i + 1, acc + w[static_cast<std::size_t>(i * cols + j)]);
        u[j] = false;
      }
    };
    rec(rec, 0, 0.0);
    ASSERT_NEAR(got, best, 1e-9);
  }
}

TEST(Config, ParseAndApply) {
  const auto kv = parse_key_values(
      "# desk run\ncodec.frac_bits = 14\nsmh.k=4\nscheme = rss4 # trailing\n\nthreshold = 0.1\n");
  diar::PipelineConfig c;
  const auto rest = apply_config(kv, c);
  EXPECT_EQ(c.codec.frac_bits, 14);
  EXPECT_EQ(c.smh.k, 4);
  EXPECT_EQ(c.scheme, "rss4");
  EXPECT_EQ(rest.size(), 1u);
  EXPECT_EQ(rest.at("threshold"), "0.1");
  try {
    parse_key_values("a = 1\nnot a pair\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  diar::PipelineConfig d;
  EXPECT_THROW(apply_config({{"smh.k", "x"}}, d), ParameterError);
  EXPECT_THROW(apply_config({{"codec.frac_bits", "60"}}, d), ParameterError);
  diar::PipelineConfig e;
  apply_config({{"features.n_coeffs", "20"}, {"tdnn.preset", "desk"}}, e);
  EXPECT_EQ(e.tdnn.input_dim(), 20);
}

TEST(Bench, RowsAndExtrapolation) {
  BenchOptions o;
  o.batches = {1, 2, 8};
  o.runs = 2;
  o.max_measured = 2;
  o.frames = 20;
  const auto rows = run_bench(o);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].batch, 1u);
  EXPECT_GT(rows[0].mb_per_party, 0.0);
  EXPECT_FALSE(rows[1].estimated);
  EXPECT_TRUE(rows[2].estimated);
  EXPECT_NEAR(rows[2].mb_per_party, 4 * rows[1].mb_per_party, 1e-12);
  EXPECT_LT(rows[1].smh_mb_per_party, 0.1 * rows[1].mb_per_party);
  std::ostringstream table, csv;
  write_bench_table(table, rows);
  write_bench_csv(csv, rows);
  EXPECT_NE(table.str().find(" $"), std::string::npos);
  const std::string c = csv.str();
  EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 4);

  o.scheme = "rss4";
  o.batches = {1};
  const auto four = run_bench(o);
  EXPECT_GT(four[0].mb_per_party, rows[0].mb_per_party);
  o.scheme = "additive";
  EXPECT_THROW(run_bench(o), ParameterError);
}

}  // namespace
}  // namespace sharediar::eval
