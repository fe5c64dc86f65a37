// core/src/decode/synth.cc

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

#include "hasr/decode/synth.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "hasr/common/errors.h"
#include "hasr/features/io.h"

namespace hasr::decode {
namespace {

constexpr std::uint64_t kModelSalt = 0x6d6f64656cull;

}  // namespace

void SynthConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("corpus config: " + what);
  };
  require(vocab_size >= 1, "vocab_size must be >= 1");
  require(states_per_word >= 1, "states_per_word must be >= 1");
  require(feature_dim >= 1, "feature_dim must be >= 1");
  require(mean_frames_per_state >= 1.0, "mean_frames_per_state must be >= 1");
  require(num_utterances >= 1, "num_utterances must be >= 1");
  require(mean_words >= 1.0, "mean_words must be >= 1");
  require(max_words >= 1, "max_words must be >= 1");
  require(num_sides >= 1, "num_sides must be >= 1");
  require(mean_scale > 0 && noise_std > 0, "mean_scale and noise_std must be positive");
  require(side_offset_std >= 0, "side_offset_std must be >= 0");
  require(lm_concentration > 0, "lm_concentration must be positive");
}

SynthConfig SynthConfig::FromKv(const KvConfig& kv, const std::string& prefix) {
  SynthConfig c;
  auto key = [&](const char* k) { return prefix + k; };
  c.vocab_size = static_cast<int>(kv.GetInt(key("vocab_size"), c.vocab_size));
  c.states_per_word = static_cast<int>(kv.GetInt(key("states_per_word"), c.states_per_word));
  c.feature_dim = static_cast<int>(kv.GetInt(key("feature_dim"), c.feature_dim));
  c.mean_frames_per_state = kv.GetDouble(key("mean_frames_per_state"), c.mean_frames_per_state);
  c.num_utterances = static_cast<int>(kv.GetInt(key("num_utterances"), c.num_utterances));
  c.mean_words = kv.GetDouble(key("mean_words"), c.mean_words);
  c.max_words = static_cast<int>(kv.GetInt(key("max_words"), c.max_words));
  c.num_sides = static_cast<int>(kv.GetInt(key("num_sides"), c.num_sides));
  c.mean_scale = kv.GetDouble(key("mean_scale"), c.mean_scale);
  c.noise_std = kv.GetDouble(key("noise_std"), c.noise_std);
  c.side_offset_std = kv.GetDouble(key("side_offset_std"), c.side_offset_std);
  c.lm_concentration = kv.GetDouble(key("lm_concentration"), c.lm_concentration);
  c.seed = static_cast<std::uint64_t>(kv.GetInt(key("seed"), static_cast<std::int64_t>(c.seed)));
  c.Validate();
  return c;
}

TrigramGenerator::TrigramGenerator(int vocab_size, double end_prob, double concentration, Rng& rng)
    : vocab_size_(vocab_size), end_prob_(end_prob) {
  const int h = vocab_size + 1;
  dist_.resize(static_cast<std::size_t>(h) * h);
  for (int w2 = -1; w2 < vocab_size; ++w2) {
    for (int w1 = -1; w1 < vocab_size; ++w1) {
      std::vector<double> p = Dirichlet(rng, vocab_size, concentration);
      const double keep = w1 < 0 ? 1.0 : 1.0 - end_prob;
      for (double& v : p) v *= keep;
      p.push_back(w1 < 0 ? 0.0 : end_prob);
      dist_[(w2 + 1) * h + (w1 + 1)] = std::move(p);
    }
  }
}

double TrigramGenerator::Probability(int w2, int w1, int word) const {
  return dist_[(w2 + 1) * (vocab_size_ + 1) + (w1 + 1)][word];
}

std::vector<int> TrigramGenerator::Sample(Rng& rng, int max_words) const {
  std::vector<int> words;
  int w2 = -1, w1 = -1;
  while (static_cast<int>(words.size()) < max_words) {
    const int w = static_cast<int>(Categorical(rng, dist_[(w2 + 1) * (vocab_size_ + 1) + (w1 + 1)]));
    if (w == vocab_size_) break;
    words.push_back(w);
    w2 = w1;
    w1 = w;
  }
  return words;
}

Matrix SynthModel::LogLikelihoods(const Matrix& frames, const std::string& side) const {
  const auto it = side_offsets.find(side);
  if (it == side_offsets.end()) throw DataError("unknown conversation side '" + side + "'");
  if (frames.cols() != means.cols()) throw ShapeError("frames do not match the model dimension");
  const double var = noise_std * noise_std;
  const double norm = -0.5 * static_cast<double>(means.cols()) * std::log(2.0 * std::numbers::pi * var);
  const Matrix centered = frames.rowwise() - it->second.transpose();
  Matrix out(frames.rows(), means.rows());
  for (Eigen::Index s = 0; s < means.rows(); ++s) {
    out.col(s) = norm - 0.5 / var * (centered.rowwise() - means.row(s)).rowwise().squaredNorm().array();
  }
  return out;
}

std::vector<std::string> SynthCorpus::Words(const SynthUtterance& utt) const {
  std::vector<std::string> out;
  for (int w : utt.words) out.push_back(model.topology.word(w).name);
  return out;
}

std::vector<std::string> DefaultVocabulary(int size) {
  static const char* kNames[] = {"alpha", "bravo",  "charlie", "delta",  "echo",    "foxtrot", "golf",
                                 "hotel", "india",  "juliett", "kilo",   "lima",    "mike",    "november",
                                 "oscar", "papa",   "quebec",  "romeo",  "sierra",  "tango",   "uniform",
                                 "victor", "whiskey", "xray",  "yankee", "zulu"};
  std::vector<std::string> out;
  for (int i = 0; i < size; ++i) out.push_back(i < 26 ? kNames[i] : "w" + std::to_string(i));
  return out;
}

SynthCorpus GenerateCorpus(const SynthConfig& config, const std::string& split) {
  config.Validate();
  SynthCorpus corpus;
  SynthModel& model = corpus.model;
  const double q = 1.0 - 1.0 / config.mean_frames_per_state;
  model.topology = HmmTopology::Uniform(DefaultVocabulary(config.vocab_size), config.states_per_word, q);
  model.noise_std = config.noise_std;

  Rng model_rng(MixSeed(config.seed, kModelSalt));
  const int S = model.topology.num_states();
  model.means.resize(S, config.feature_dim);
  for (int s = 0; s < S; ++s) {
    for (int d = 0; d < config.feature_dim; ++d) model.means(s, d) = config.mean_scale * StandardNormal(model_rng);
  }
  model.lm = TrigramGenerator(config.vocab_size, 1.0 / config.mean_words, config.lm_concentration, model_rng);

  std::vector<std::string> sides;
  for (int i = 0; i < config.num_sides; ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_s%02d", split.c_str(), i);
    sides.push_back(name);
    Rng side_rng(MixSeed(config.seed, HashString(name)));
    Vector offset(config.feature_dim);
    for (int d = 0; d < config.feature_dim; ++d) offset(d) = config.side_offset_std * StandardNormal(side_rng);
    model.side_offsets.emplace(name, std::move(offset));
  }

  Rng rng(MixSeed(config.seed, HashString("utterances/" + split)));
  for (int u = 0; u < config.num_utterances; ++u) {
    SynthUtterance utt;
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%05d", split.c_str(), u);
    utt.utt_id = name;
    utt.side_id = sides[u % config.num_sides];
    utt.words = model.lm.Sample(rng, config.max_words);
    for (int w : utt.words) {
      for (StateId s = model.topology.FirstState(w); s <= model.topology.LastState(w); ++s) {
        int duration = 1;
        while (Uniform01(rng) < q) ++duration;
        utt.states.insert(utt.states.end(), duration, s);
      }
    }
    const Vector& offset = model.side_offsets.at(utt.side_id);
    utt.frames.resize(static_cast<Eigen::Index>(utt.states.size()), config.feature_dim);
    for (Eigen::Index t = 0; t < utt.frames.rows(); ++t) {
      for (int d = 0; d < config.feature_dim; ++d) {
        utt.frames(t, d) = model.means(utt.states[t], d) + offset(d) + config.noise_std * StandardNormal(rng);
      }
    }
    corpus.utterances.push_back(std::move(utt));
  }
  return corpus;
}

void WriteCorpus(const SynthCorpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "feats");
  std::vector<features::FeatureListEntry> scp;
  std::vector<features::Alignment> ali;
  std::vector<features::Transcript> text;
  std::ofstream sides(fs::path(dir) / "utt2side");
  if (!sides) throw IoError("cannot write utt2side in '" + dir + "'");
  for (const auto& utt : corpus.utterances) {
    const std::string rel = "feats/" + utt.utt_id + ".feat";
    features::WriteFeatureFile((fs::path(dir) / rel).string(), utt.frames);
    scp.push_back({utt.utt_id, rel});
    ali.push_back({utt.utt_id, utt.states});
    text.push_back({utt.utt_id, corpus.Words(utt)});
    sides << utt.utt_id << ' ' << utt.side_id << '\n';
  }
  features::WriteFeatureList((fs::path(dir) / "feats.scp").string(), scp);
  features::WriteAlignmentFile((fs::path(dir) / "ali.txt").string(), ali);
  features::WriteTranscripts((fs::path(dir) / "text").string(), text);
  corpus.model.topology.WriteFile((fs::path(dir) / "topology.txt").string());
}

std::vector<StateId> ContextTargets(const std::vector<StateId>& states, const HmmTopology& topology, int contexts) {
  if (contexts < 1) throw ConfigError("context count must be >= 1");
  const int S = topology.num_states();
  std::vector<StateId> out(states.size());
  int prev_word = -1, cur_word = -1;
  for (std::size_t t = 0; t < states.size(); ++t) {
    const StateId s = states[t];
    if (s < 0 || s >= S) throw DataError("state " + std::to_string(s) + " not in topology");
    if (t == 0 || (topology.IsFirst(s) && states[t - 1] != s)) {
      prev_word = t == 0 ? -1 : cur_word;
      cur_word = topology.WordOf(s);
    }
    out[t] = s + S * ((prev_word + 1) % contexts);
  }
  return out;
}

}  // namespace hasr::decode
