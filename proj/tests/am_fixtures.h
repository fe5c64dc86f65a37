// tests/am_fixtures.h

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

#ifndef HASR_TESTS_AM_FIXTURES_H_
#define HASR_TESTS_AM_FIXTURES_H_

#include <string>
#include <vector>

#include "hasr/decode/synth.h"
#include "hasr/features/pipeline.h"
#include "hasr/nn/network.h"
#include "hasr/train/dataset.h"
#include "test_util.h"

namespace hasr::testing {

// Small member architectures over `dim`-wide frames. The cnn reads
// "deltas,cnn:2" blocks, the rnn "window:3", the dnn "splice:2".
inline nn::NetworkSpec SmallCnn(int dim, int outputs, int bottleneck = 16) {
  nn::CnnConfig c;
  c.input = {dim, 5, 3};
  c.conv1_filters = 6;
  c.conv1_window_h = 5;
  c.conv1_window_w = 3;
  c.pool_h = 2;
  c.pool_w = 1;
  c.conv2_filters = 6;
  c.conv2_window_h = 3;
  c.conv2_window_w = 1;
  c.bottleneck = bottleneck;
  c.num_outputs = outputs;
  return nn::BuildCnn(c);
}

inline nn::NetworkSpec SmallRnn(int dim, int outputs, int bottleneck = 16) {
  nn::RnnConfig c;
  c.frame_dim = dim;
  c.steps = 3;
  c.recurrent_dim = 32;
  c.bottleneck = bottleneck;
  c.num_outputs = outputs;
  return nn::BuildUnfoldedRnn(c);
}

inline nn::NetworkSpec SmallDnn(int dim, int outputs, int bottleneck = 16) {
  return nn::BuildFeedForward(5 * dim, {48}, nn::Nonlinearity::kSigmoid, bottleneck, outputs);
}

inline const char* kCnnPipeline = "cmvn,deltas,cnn:2";
inline const char* kRnnPipeline = "cmvn,window:3";
inline const char* kDnnPipeline = "cmvn,splice:2";

// Random network with non-zero biases everywhere.
inline nn::Network RandomNet(const nn::NetworkSpec& spec, std::uint64_t seed) {
  nn::Network net = nn::Network::Random(spec, seed);
  Rng rng(seed ^ 0xb1a5);
  for (auto& l : net.mutable_params().layers) {
    if (l.bias.size()) l.bias = RandomVector(l.bias.size(), rng, 0.5);
  }
  return net;
}

// Frames and state targets of a synthetic split, run through `pipeline`.
inline train::FrameDataset SynthFrames(const decode::SynthCorpus& corpus, const std::string& pipeline) {
  std::vector<Matrix> frames;
  std::vector<std::string> sides;
  std::vector<std::vector<StateId>> targets;
  for (const auto& u : corpus.utterances) {
    frames.push_back(u.frames);
    sides.push_back(u.side_id);
    targets.push_back(u.states);
  }
  return train::FrameDataset::FromUtterances(
      features::ApplyPipeline(frames, sides, features::FeaturePipeline::Parse(pipeline)), targets);
}

}  // namespace hasr::testing

#endif  // HASR_TESTS_AM_FIXTURES_H_
