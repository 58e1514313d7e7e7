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


// Command-line front end. Exit codes: 0 ok, 1 usage, 2 data error,
// 3 protocol abort.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sharediar/diar/pipeline.h"
#include "sharediar/dsp/mfcc.h"
#include "sharediar/dsp/synth.h"
#include "sharediar/error.h"
#include "sharediar/eval/bench.h"
#include "sharediar/eval/config.h"
#include "sharediar/eval/score.h"
#include "sharediar/mpc/protocol.h"
#include "sharediar/random.h"

namespace {

using namespace sharediar;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kAbort = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options shared by the commands that run the pipeline.
struct Common {
  std::string config_file;
  std::string scheme;
  std::string weights_file;
  std::string key_file;
  std::uint64_t weight_seed = 42;
  std::uint64_t key_seed = 7;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* app) {
    app->add_option("--config", config_file, "key=value configuration file");
    app->add_option("--scheme", scheme, "rss3 or rss4 (private mode)");
    app->add_option("--weights", weights_file, "embedding model weights (default: Xavier, --weight-seed)");
    app->add_option("--weight-seed", weight_seed, "seed for generated weights");
    app->add_option("--key", key_file, "SMH key file (default: generated from --key-seed)");
    app->add_option("--key-seed", key_seed, "seed for a generated SMH key");
    app->add_option("--seed", seed, "protocol randomness seed");
  }

  diar::PipelineConfig config() const {
    diar::PipelineConfig c;
    if (!config_file.empty()) {
      const auto rest = eval::apply_config(eval::read_key_values(config_file), c);
      if (!rest.empty()) throw UsageError("unknown config key '" + rest.begin()->first + "'");
    }
    if (!scheme.empty()) c.scheme = scheme;
    if (seed) c.seed = *seed;
    return c;
  }

  embed::ModelWeights weights(const diar::PipelineConfig& c) const {
    auto w = weights_file.empty() ? embed::ModelWeights::xavier(c.tdnn, weight_seed)
                                  : embed::ModelWeights::load(weights_file, c.tdnn);
    return w.quantized(c.codec);
  }

  smh::SmhKey key(const diar::PipelineConfig& c) const {
    auto k = key_file.empty() ? smh::SmhKey::generate(c.tdnn.embedding_dim(), c.smh, key_seed)
                              : smh::SmhKey::load(key_file);
    return k.quantized(c.codec);
  }
};

std::vector<double> parse_grid(const std::string& spec) {
  double a, b, step;
  char c1, c2;
  std::istringstream ss(spec);
  if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || b < a) {
    throw UsageError("grid must be a:b:step with a <= b and step > 0");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double t = a + i * step;
    if (t > b + 1e-9 * step) break;
    out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> parse_batches(const std::string& spec) {
  std::vector<std::size_t> out;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw UsageError("bad batch size '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("no batch sizes");
  return out;
}

void print_stats(std::ostream& out, const mpc::NetStats& s) {
  out << "rounds " << s.rounds << ", bytes total " << s.total_bytes() << ", max per party "
      << s.max_party_bytes() << ", dealer " << s.dealer_bytes << "\n";
}

std::vector<eval::RttmTurn> all_turns(const std::vector<dsp::Recording>& corpus) {
  std::vector<eval::RttmTurn> out;
  for (const auto& r : corpus) out.insert(out.end(), r.turns.begin(), r.turns.end());
  return out;
}

std::vector<diar::PreparedRecording> prepare_all(const std::vector<dsp::Recording>& corpus, diar::Mode mode,
                                                 const diar::PipelineConfig& c, const embed::ModelWeights& w,
                                                 const smh::SmhKey& key, mpc::NetStats* total) {
  std::vector<diar::PreparedRecording> out;
  for (const auto& r : corpus) {
    out.push_back(diar::prepare(r, mode, c, w, key));
    if (total) *total += out.back().stats;
    std::cerr << "prepared " << r.id << " (" << out.back().windows.size() << " windows)\n";
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Privacy-preserving speaker diarization toolkit"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "write a seeded synthetic corpus");
  dsp::CorpusConfig cc;
  std::string gen_out;
  bool gen_append = false;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--recordings", cc.recordings);
  gen->add_option("--min-speakers", cc.min_speakers);
  gen->add_option("--max-speakers", cc.max_speakers);
  gen->add_option("--duration", cc.duration, "seconds per recording");
  gen->add_option("--contrast", cc.contrast, "spectral contrast of the voices");
  gen->add_option("--domain", cc.domain);
  gen->add_option("--seed", cc.seed);
  gen->add_flag("--append", gen_append, "add to an existing corpus list");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate an SMH key (and optionally model weights)");
  Common kg;
  std::string key_out, weights_out;
  kg.add(keygen);
  keygen->add_option("--out", key_out, "key file")->required();
  keygen->add_option("--weights-out", weights_out, "also write Xavier weights for the configured model");

  // features
  auto* feats = app.add_subcommand("features", "dump MFCC features of a WAV file as CSV");
  std::string feat_wav, feat_out;
  bool feat_cmn = false;
  feats->add_option("--wav", feat_wav)->required();
  feats->add_option("--out", feat_out, "CSV file (default stdout)");
  feats->add_flag("--cmn", feat_cmn, "subtract the per-coefficient mean");

  // diarize
  auto* diarize = app.add_subcommand("diarize", "diarize every recording of a corpus");
  Common dc;
  std::string d_corpus, d_mode = "baseline", d_out, d_per_domain;
  std::optional<double> d_threshold;
  dc.add(diarize);
  diarize->add_option("--corpus", d_corpus)->required();
  diarize->add_option("--mode", d_mode, "baseline or private");
  diarize->add_option("--threshold", d_threshold, "AHC stopping distance");
  diarize->add_option("--per-domain-thresholds", d_per_domain, "key=value file: <domain> = <threshold>");
  diarize->add_option("--out", d_out, "hypothesis RTTM (default stdout)");

  // score
  auto* score = app.add_subcommand("score", "DER / JER of a hypothesis against a reference");
  std::string s_ref, s_hyp, s_corpus;
  eval::ScoreOptions s_opts;
  bool s_no_overlap = false;
  score->add_option("--ref", s_ref)->required();
  score->add_option("--hyp", s_hyp)->required();
  score->add_option("--collar", s_opts.collar);
  score->add_flag("--no-overlap", s_no_overlap, "skip overlapped reference speech");
  score->add_option("--corpus", s_corpus, "corpus directory for a per-domain breakdown");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "DER over a grid of AHC thresholds");
  Common sc;
  std::string w_corpus, w_mode = "baseline", w_grid, w_csv;
  sc.add(sweep);
  sweep->add_option("--corpus", w_corpus)->required();
  sweep->add_option("--mode", w_mode);
  sweep->add_option("--grid", w_grid, "a:b:step")->required();
  sweep->add_option("--csv", w_csv, "write per-threshold results");

  // bench
  auto* bench = app.add_subcommand("bench", "time and communication of secure extraction + hashing");
  eval::BenchOptions bo;
  std::string b_batches = "16,64,256", b_csv, b_config;
  bench->add_option("--scheme", bo.scheme);
  bench->add_option("--batches", b_batches, "comma-separated batch sizes");
  bench->add_option("--runs", bo.runs);
  bench->add_option("--max-measured", bo.max_measured, "extrapolate linearly above this batch");
  bench->add_option("--config", b_config);
  bench->add_option("--csv", b_csv);

  // dump-transcript
  auto* dump = app.add_subcommand("dump-transcript", "hash random segments and write the message transcript");
  Common tc;
  std::size_t t_segments = 2;
  std::string t_out;
  std::optional<int> t_party;
  tc.add(dump);
  dump->add_option("--segments", t_segments);
  dump->add_option("--party", t_party, "only messages received by this party");
  dump->add_option("--out", t_out, "file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (*gen) {
    const auto corpus = dsp::generate_corpus(cc);
    dsp::save_corpus(gen_out, corpus, gen_append);
    std::cout << "wrote " << corpus.size() << " recordings to " << gen_out << "\n";
    return 0;
  }
  if (*keygen) {
    const auto c = kg.config();
    const auto key = smh::SmhKey::generate(c.tdnn.embedding_dim(), c.smh, kg.key_seed);
    key.save(key_out);
    if (!weights_out.empty()) embed::ModelWeights::xavier(c.tdnn, kg.weight_seed).save(weights_out);
    std::cout << "key: N=" << key.n << " M=" << key.m << " k=" << key.params.k << "\n";
    return 0;
  }
  if (*feats) {
    dsp::FeatureMatrix f = dsp::mfcc(dsp::read_wav(feat_wav));
    if (feat_cmn) dsp::mean_normalize(f);
    if (feat_out.empty()) {
      dsp::write_features_csv(std::cout, f);
    } else {
      std::ofstream out(feat_out);
      dsp::write_features_csv(out, f);
    }
    return 0;
  }
  if (*diarize) {
    const auto c = dc.config();
    const auto mode = diar::mode_from_name(d_mode);
    std::map<std::string, double> per_domain;
    if (!d_per_domain.empty()) {
      for (const auto& [k, v] : eval::read_key_values(d_per_domain)) {
        try {
          per_domain[k] = std::stod(v);
        } catch (const std::exception&) {
          throw UsageError("bad threshold for domain " + k);
        }
      }
    }
    if (!d_threshold && per_domain.empty()) throw UsageError("--threshold or --per-domain-thresholds required");
    const auto corpus = dsp::load_corpus(d_corpus);
    mpc::NetStats total;
    const auto prep = prepare_all(corpus, mode, c, dc.weights(c), dc.key(c), &total);
    const auto hyp = diar::diarize_all(prep, per_domain, d_threshold.value_or(0.0));
    if (!d_threshold) {
      for (const auto& p : prep) {
        if (!per_domain.count(p.domain)) throw UsageError("no threshold for domain " + p.domain);
      }
    }
    if (d_out.empty()) {
      std::cout << eval::emit_rttm(hyp);
    } else {
      eval::write_rttm(d_out, hyp);
    }
    if (mode == diar::Mode::kPrivate) print_stats(std::cerr, total);
    return 0;
  }
  if (*score) {
    s_opts.score_overlap = !s_no_overlap;
    const auto ref = eval::read_rttm(s_ref);
    const auto hyp = eval::read_rttm(s_hyp);
    std::map<std::string, std::string> domains;
    if (!s_corpus.empty()) {
      std::ifstream list(std::filesystem::path(s_corpus) / "corpus.lst");
      if (!list) throw DataError("no corpus.lst in " + s_corpus);
      std::string id, dom;
      while (list >> id >> dom) domains[id] = dom;
    }
    const auto cs = eval::score_corpus(ref, hyp, domains, s_opts);
    auto line = [](const std::string& name, const eval::ScoreReport& r) {
      std::printf("%-12s DER %6.2f%%  JER %6.2f%%  (miss %.2f, fa %.2f, conf %.2f; %.1f s)\n", name.c_str(),
                  r.der, r.jer, r.missed, r.false_alarm, r.confusion, r.ref_speech);
    };
    line("overall", cs.overall);
    if (!s_corpus.empty()) {
      for (const auto& [d, r] : cs.by_domain) line(d, r);
    }
    return 0;
  }
  if (*sweep) {
    const auto c = sc.config();
    const auto mode = diar::mode_from_name(w_mode);
    const auto grid = parse_grid(w_grid);
    const auto corpus = dsp::load_corpus(w_corpus);
    const auto prep = prepare_all(corpus, mode, c, sc.weights(c), sc.key(c), nullptr);
    const auto r = diar::threshold_sweep(prep, all_turns(corpus), grid);
    std::printf("%10s %9s", "threshold", "DER");
    for (const auto& [d, v] : r.der_by_domain) std::printf(" %12s", d.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::printf("%10.4f %8.2f%%", grid[i], r.der[i]);
      for (const auto& [d, v] : r.der_by_domain) std::printf(" %11.2f%%", v[i]);
      std::printf("\n");
    }
    std::printf("best threshold %.4f (DER %.2f%%)\n", r.best_threshold, r.best_der);
    for (const auto& [d, t] : r.best_by_domain) std::printf("  %s = %.4f\n", d.c_str(), t);
    if (!w_csv.empty()) {
      std::ofstream out(w_csv);
      out << "threshold,der";
      for (const auto& [d, v] : r.der_by_domain) out << ",der_" << d;
      out << "\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        out << grid[i] << ',' << r.der[i];
        for (const auto& [d, v] : r.der_by_domain) out << ',' << v[i];
        out << "\n";
      }
    }
    return 0;
  }
  if (*bench) {
    bo.batches = parse_batches(b_batches);
    if (!b_config.empty()) {
      diar::PipelineConfig c;
      const auto rest = eval::apply_config(eval::read_key_values(b_config), c);
      if (!rest.empty()) throw UsageError("unknown config key '" + rest.begin()->first + "'");
      bo.tdnn = c.tdnn;
      bo.smh = c.smh;
      bo.codec = c.codec;
      bo.trunc = c.trunc;
      bo.sub_batch = c.sub_batch;
      bo.seed = c.seed;
    }
    const auto rows = eval::run_bench(bo);
    eval::write_bench_table(std::cout, rows);
    if (!b_csv.empty()) {
      std::ofstream out(b_csv);
      eval::write_bench_csv(out, rows);
    }
    return 0;
  }
  if (*dump) {
    const auto c = tc.config();
    diar::PrivateSession session(c, tc.weights(c), tc.key(c));
    std::mt19937_64 rng(c.seed);
    std::vector<dsp::FeatureMatrix> segs;
    for (std::size_t s = 0; s < t_segments; ++s) {
      dsp::FeatureMatrix f(150, static_cast<std::size_t>(c.tdnn.input_dim()));
      for (auto& v : f.data) v = normal(rng);
      segs.push_back(std::move(f));
    }
    session.net().clear_transcript();
    session.net().record_transcript(true);
    session.hash_segments(segs);
    std::vector<mpc::Message> msgs;
    for (const auto& m : session.net().transcript()) {
      if (!t_party || m.dst == *t_party) msgs.push_back(m);
    }
    std::ostringstream text;
    mpc::write_messages(text, msgs);
    if (t_out.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream(t_out) << text.str();
    }
    std::cerr << msgs.size() << " messages\n";
    return 0;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const sharediar::ProtocolAbort& e) {
    std::cerr << "protocol abort: " << e.what() << "\n";
    return kAbort;
  } catch (const sharediar::NetworkError& e) {
    std::cerr << "protocol abort: " << e.what() << "\n";
    return kAbort;
  } catch (const sharediar::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
}
