// benchmarks/hasr_bench.cc

// Copyright 2026 The hybridasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "hasr/common/random.h"
#include "hasr/decode/nbest.h"
#include "hasr/decode/synth.h"
#include "hasr/decode/viterbi.h"
#include "hasr/features/logmel.h"
#include "hasr/lm/counts.h"
#include "hasr/lm/kneser_ney.h"
#include "hasr/lm/prune.h"
#include "hasr/nn/network.h"
#include "hasr/nnlm/nnlm.h"

namespace hasr {
namespace {

Matrix Uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = UniformReal(rng, -1.0, 1.0);
  return m;
}

nn::Minibatch Batch(int frames, int dim, int classes, Rng& rng) {
  nn::Minibatch b;
  b.inputs = Uniform(frames, dim, rng);
  for (int i = 0; i < frames; ++i) b.targets.push_back(static_cast<StateId>(UniformIndex(rng, classes)));
  return b;
}

nn::NetworkSpec Dnn(nn::Nonlinearity nl) { return nn::BuildFeedForward(360, {512, 512}, nl, 128, 1000); }

void BM_DnnForward(benchmark::State& state) {
  const nn::Network net = nn::Network::Random(Dnn(nn::Nonlinearity::kSigmoid), 1);
  Rng rng(2);
  const Matrix x = Uniform(state.range(0), 360, rng);
  for (auto _ : state) benchmark::DoNotOptimize(net.LogPosteriors(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DnnForward)->Arg(64)->Arg(256);

void BM_DnnBackprop(benchmark::State& state) {
  const auto nl = state.range(0) == 0 ? nn::Nonlinearity::kSigmoid : nn::Nonlinearity::kMaxout;
  const nn::NetworkSpec spec = Dnn(nl);
  const nn::ModelParams params = nn::InitParams(spec, 1);
  Rng rng(3);
  const nn::Minibatch b = Batch(256, 360, 1000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::Backprop(spec, params, b));
  state.SetItemsProcessed(state.iterations() * 256);
  state.SetLabel(state.range(0) == 0 ? "sigmoid" : "maxout");
}
BENCHMARK(BM_DnnBackprop)->Arg(0)->Arg(1);

void BM_CnnBackprop(benchmark::State& state) {
  nn::CnnConfig c;
  c.input = {40, 5, 3};
  c.conv1_filters = 32;
  c.conv1_window_h = 9;
  c.conv1_window_w = 3;
  c.pool_h = 2;
  c.pool_w = 1;
  c.conv2_filters = 64;
  c.conv2_window_h = 4;
  c.conv2_window_w = 3;
  c.bottleneck = 128;
  c.num_outputs = 1000;
  const nn::NetworkSpec spec = nn::BuildCnn(c);
  const nn::ModelParams params = nn::InitParams(spec, 1);
  Rng rng(4);
  const nn::Minibatch b = Batch(128, spec.input_dim(), 1000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::Backprop(spec, params, b));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_CnnBackprop);

void BM_RnnBackprop(benchmark::State& state) {
  nn::RnnConfig c;
  c.frame_dim = 40;
  c.steps = 4;
  c.recurrent_dim = 256;
  c.bottleneck = 128;
  c.num_outputs = 1000;
  const nn::NetworkSpec spec = nn::BuildUnfoldedRnn(c);
  const nn::ModelParams params = nn::InitParams(spec, 1);
  Rng rng(5);
  const nn::Minibatch b = Batch(128, spec.input_dim(), 1000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::Backprop(spec, params, b));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_RnnBackprop);

void BM_Viterbi(benchmark::State& state) {
  decode::SynthConfig sc;
  sc.vocab_size = static_cast<int>(state.range(0));
  const decode::HmmTopology topo = decode::GenerateCorpus([&] {
                                     auto s = sc;
                                     s.num_utterances = 1;
                                     return s;
                                   }())
                                       .model.topology;
  Rng rng(6);
  const Matrix scores = Uniform(500, topo.num_states(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(decode::ViterbiDecode(scores, topo));
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_Viterbi)->Arg(10)->Arg(100);

void BM_NBest(benchmark::State& state) {
  decode::SynthConfig sc;
  sc.num_utterances = 1;
  const auto corpus = decode::GenerateCorpus(sc);
  const auto& u = corpus.utterances.front();
  const Matrix ll = corpus.model.LogLikelihoods(u.frames, u.side_id);
  for (auto _ : state) benchmark::DoNotOptimize(decode::GenerateNBest(u.utt_id, ll, corpus.model.topology, 20));
}
BENCHMARK(BM_NBest);

lm::Corpus TextCorpus(int sentences, int vocab) {
  Rng rng(7);
  lm::Corpus c;
  for (int s = 0; s < sentences; ++s) {
    lm::Sentence words;
    const int len = 1 + static_cast<int>(UniformIndex(rng, 15));
    for (int i = 0; i < len; ++i) {
      // Skewed word distribution so that higher-order n-grams repeat.
      const double u = Uniform01(rng);
      words.push_back("w" + std::to_string(static_cast<int>(u * u * vocab)));
    }
    c.push_back(std::move(words));
  }
  return c;
}

void BM_KneserNeyEstimate(benchmark::State& state) {
  const lm::Corpus corpus = TextCorpus(static_cast<int>(state.range(0)), 200);
  for (auto _ : state) benchmark::DoNotOptimize(lm::EstimateKneserNey(lm::CountNgrams(corpus, 3)));
}
BENCHMARK(BM_KneserNeyEstimate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EntropyPrune(benchmark::State& state) {
  const lm::NgramModel m = lm::EstimateKneserNey(lm::CountNgrams(TextCorpus(2000, 100), 3));
  for (auto _ : state) benchmark::DoNotOptimize(lm::PruneByEntropy(m, 1e-5));
  state.SetLabel(std::to_string(m.TotalEntries()) + " entries");
}
BENCHMARK(BM_EntropyPrune)->Unit(benchmark::kMillisecond);

void BM_Logmel(benchmark::State& state) {
  features::Waveform w;
  w.sample_rate = 8000;
  Rng rng(8);
  w.samples.resize(8000);
  for (auto& s : w.samples) s = static_cast<std::int16_t>(UniformReal(rng, -8000.0, 8000.0));
  for (auto _ : state) benchmark::DoNotOptimize(features::Logmel(w));
  state.SetLabel("1 s of audio");
}
BENCHMARK(BM_Logmel);

void BM_NnlmTrainStep(benchmark::State& state) {
  const lm::Corpus corpus = TextCorpus(500, 1000);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  nnlm::NnlmConfig cfg;
  cfg.history = 2;
  cfg.hidden_dim = 128;
  nnlm::NnlmModel model(vocab, cfg);
  const nnlm::ContextDataset data(corpus, vocab, cfg.history);
  std::vector<std::size_t> idx(64);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const nnlm::ContextBatch batch = data.MakeBatch(idx);
  for (auto _ : state) benchmark::DoNotOptimize(model.TrainStep(batch, 1e-3, nn::DropoutState{}));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_NnlmTrainStep);

}  // namespace
}  // namespace hasr

BENCHMARK_MAIN();
