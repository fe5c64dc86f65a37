// core/src/experiment/lm_ladder.cc

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

#include "hasr/experiment/lm_ladder.h"

#include <filesystem>
#include <sstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/features/io.h"
#include "hasr/lm/counts.h"
#include "hasr/lm/interpolate.h"
#include "hasr/lm/kneser_ney.h"
#include "hasr/lm/perplexity.h"
#include "hasr/common/random.h"
#include "hasr/decode/viterbi.h"

namespace hasr::experiment {
namespace fs = std::filesystem;
namespace {

References ReadRefs(const std::string& path) {
  References out;
  for (auto& [utt, words] : features::ReadTranscripts(path)) out[utt] = std::move(words);
  return out;
}

void WriteRefs(const std::string& path, const References& refs) {
  std::vector<features::Transcript> t(refs.begin(), refs.end());
  features::WriteTranscripts(path, t);
}

LadderRow Evaluate(const std::string& name, const LadderData& data, const nnlm::LmMixture& lms,
                   const LadderConfig& config, const std::vector<double>& lm_weights) {
  LadderRow row;
  row.name = name;
  const nnlm::GridResult g = nnlm::GridSearchWeights(data.dev, lms, data.dev_refs, lm_weights, config.word_bonuses);
  row.weights = g.weights;
  row.dev_wer = g.wer.Rate();
  row.test_wer = nnlm::OneBestWer(data.test, nnlm::RescoreAll(data.test, lms, g.weights), data.test_refs).Rate();
  row.mixture_weights = lms.weights;
  return row;
}

}  // namespace

LadderFixtureConfig::LadderFixtureConfig() {
  corpus.mean_scale = 0.4;
  am.train.lr0 = 1.0;
  am.train.epochs = 8;
}

LadderFixtureConfig LadderFixtureConfig::FromKv(const KvConfig& kv, const std::string& prefix) {
  LadderFixtureConfig c;
  decode::SynthConfig defaults = c.corpus;
  c.corpus = decode::SynthConfig::FromKv(kv, prefix + "corpus.");
  if (!kv.Has(prefix + "corpus.mean_scale")) c.corpus.mean_scale = defaults.mean_scale;
  KvConfig am_kv = kv;
  if (!kv.Has(prefix + "am.lr")) am_kv.Set(prefix + "am.lr", "1.0");
  if (!kv.Has(prefix + "am.epochs")) am_kv.Set(prefix + "am.epochs", "8");
  c.am = AmModelConfig::FromKv(am_kv, prefix + "am.", "ladder_am");
  c.train_utterances = static_cast<int>(kv.GetInt(prefix + "train_utterances", c.train_utterances));
  c.dev_utterances = static_cast<int>(kv.GetInt(prefix + "dev_utterances", c.dev_utterances));
  c.test_utterances = static_cast<int>(kv.GetInt(prefix + "test_utterances", c.test_utterances));
  c.nbest = static_cast<int>(kv.GetInt(prefix + "nbest", c.nbest));
  c.in_domain_sentences = static_cast<int>(kv.GetInt(prefix + "in_domain_sentences", c.in_domain_sentences));
  c.broad_sentences = static_cast<int>(kv.GetInt(prefix + "broad_sentences", c.broad_sentences));
  c.broad_in_domain_fraction = kv.GetDouble(prefix + "broad_in_domain_fraction", c.broad_in_domain_fraction);
  c.heldout_sentences = static_cast<int>(kv.GetInt(prefix + "heldout_sentences", c.heldout_sentences));
  return c;
}

LadderData MakeLadderData(const LadderFixtureConfig& config) {
  decode::SynthConfig sc = config.corpus;
  auto split = [&](const std::string& name, int n) {
    sc.num_utterances = n;
    return decode::GenerateCorpus(sc, name);
  };
  const decode::SynthCorpus train_c = split("train", config.train_utterances);
  const decode::SynthCorpus dev_c = split("dev", config.dev_utterances);
  const decode::SynthCorpus test_c = split("test", config.test_utterances);
  const AmData train_d = FromSynth(train_c), dev_d = FromSynth(dev_c), test_d = FromSynth(test_c);
  const AcousticModel am = TrainAcousticModel(config.am, train_d).model;

  LadderData d;
  d.dev = MakeNBestLists(am.StateLogPosteriors(dev_d), dev_d, am.priors(), config.nbest);
  d.test = MakeNBestLists(am.StateLogPosteriors(test_d), test_d, am.priors(), config.nbest);
  for (const auto& u : dev_d.utterances) d.dev_refs[u.utt_id] = u.words;
  for (const auto& u : test_d.utterances) d.test_refs[u.utt_id] = u.words;

  const decode::HmmTopology& topo = train_c.model.topology;
  const decode::TrigramGenerator& truth = train_c.model.lm;
  Rng other_rng(MixSeed(sc.seed, HashString("ladder/broad-generator")));
  const decode::TrigramGenerator other(sc.vocab_size, 1.0 / sc.mean_words, sc.lm_concentration, other_rng);
  auto sample = [&](const decode::TrigramGenerator& gen, Rng& rng) {
    return decode::WordNames(topo, gen.Sample(rng, sc.max_words));
  };
  Rng text_rng(MixSeed(sc.seed, HashString("ladder/text")));
  for (int i = 0; i < config.in_domain_sentences; ++i) d.in_domain.push_back(sample(truth, text_rng));
  for (int i = 0; i < config.heldout_sentences; ++i) d.heldout.push_back(sample(truth, text_rng));
  for (int i = 0; i < config.broad_sentences; ++i) {
    const bool in_domain = Uniform01(text_rng) < config.broad_in_domain_fraction;
    d.broad.push_back(sample(in_domain ? truth : other, text_rng));
  }
  return d;
}

LadderData LadderData::Load(const std::string& dir) {
  const fs::path root(dir);
  LadderData d;
  d.in_domain = lm::ReadCorpus((root / "lm_train.txt").string());
  d.broad = lm::ReadCorpus((root / "lm_broad.txt").string());
  d.heldout = lm::ReadCorpus((root / "lm_heldout.txt").string());
  d.dev = decode::ReadNBestFile((root / "dev.nbest").string());
  d.dev_refs = ReadRefs((root / "dev.ref").string());
  d.test = decode::ReadNBestFile((root / "test.nbest").string());
  d.test_refs = ReadRefs((root / "test.ref").string());
  return d;
}

void LadderData::Save(const std::string& dir) const {
  fs::create_directories(dir);
  const fs::path root(dir);
  lm::WriteCorpus((root / "lm_train.txt").string(), in_domain);
  lm::WriteCorpus((root / "lm_broad.txt").string(), broad);
  lm::WriteCorpus((root / "lm_heldout.txt").string(), heldout);
  decode::WriteNBestFile((root / "dev.nbest").string(), dev);
  WriteRefs((root / "dev.ref").string(), dev_refs);
  decode::WriteNBestFile((root / "test.nbest").string(), test);
  WriteRefs((root / "test.ref").string(), test_refs);
}

LadderConfig::LadderConfig() {
  nnlm.history = 2;
  nnlm.epochs = 40;
  nnlm.lr0 = 1.0;
  nnlm.lr_decay = 0.95;
  nnlm.minibatch = 8;
}

LadderConfig LadderConfig::FromKv(const KvConfig& kv, const std::string& prefix) {
  LadderConfig c;
  c.baseline_order = static_cast<int>(kv.GetInt(prefix + "baseline_order", c.baseline_order));
  c.interpolated_order = static_cast<int>(kv.GetInt(prefix + "interpolated_order", c.interpolated_order));
  if (kv.Has(prefix + "lm_weights")) c.lm_weights = kv.GetDoubleList(prefix + "lm_weights");
  if (kv.Has(prefix + "word_bonuses")) c.word_bonuses = kv.GetDoubleList(prefix + "word_bonuses");
  const std::string np = prefix + "nnlm.";
  c.nnlm.history = static_cast<int>(kv.GetInt(np + "history", c.nnlm.history));
  c.nnlm.embedding_dim = static_cast<int>(kv.GetInt(np + "embedding_dim", c.nnlm.embedding_dim));
  c.nnlm.hidden_dim = static_cast<int>(kv.GetInt(np + "hidden_dim", c.nnlm.hidden_dim));
  c.nnlm.epochs = static_cast<int>(kv.GetInt(np + "epochs", c.nnlm.epochs));
  c.nnlm.lr0 = kv.GetDouble(np + "lr", c.nnlm.lr0);
  c.nnlm.lr_decay = kv.GetDouble(np + "lr_decay", c.nnlm.lr_decay);
  c.nnlm.minibatch = static_cast<std::size_t>(kv.GetInt(np + "minibatch", static_cast<std::int64_t>(c.nnlm.minibatch)));
  c.nnlm.seed = static_cast<std::uint64_t>(kv.GetInt(np + "seed", static_cast<std::int64_t>(c.nnlm.seed)));
  c.nnlm.Validate();
  if (c.baseline_order < 1 || c.interpolated_order < 1) throw ConfigError("ladder n-gram orders must be >= 1");
  return c;
}

std::vector<LadderRow> RunLmLadder(const LadderData& data, const LadderConfig& config) {
  if (data.dev.empty() || data.test.empty()) throw DataError("ladder needs dev and test N-best lists");
  lm::Corpus all = data.in_domain;
  all.insert(all.end(), data.broad.begin(), data.broad.end());
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(all);

  const lm::NgramModel baseline = lm::EstimateKneserNey(lm::CountNgrams(data.in_domain, config.baseline_order, vocab));
  const lm::NgramModel in_domain =
      lm::EstimateKneserNey(lm::CountNgrams(data.in_domain, config.interpolated_order, vocab));
  const lm::NgramModel broad = lm::EstimateKneserNey(lm::CountNgrams(data.broad, config.interpolated_order, vocab));
  const nnlm::NnlmModel neural = nnlm::TrainNnlm(data.in_domain, vocab, config.nnlm).model;

  const lm::EmResult ngram_em = lm::InterpolateEm({&in_domain, &broad}, data.heldout);
  const lm::EmResult full_em = lm::InterpolateEm({&in_domain, &broad, &neural}, data.heldout);

  std::vector<LadderRow> rows;
  rows.push_back(Evaluate("acoustic_only", data, {}, config, {0.0}));

  rows.push_back(Evaluate("baseline_ngram", data, {{&baseline}, {1.0}}, config, config.lm_weights));
  rows.back().heldout_perplexity = lm::Perplexity(baseline, data.heldout).perplexity;

  const nnlm::LmMixture ngram_mix{{&in_domain, &broad}, ngram_em.weights};
  rows.push_back(Evaluate("interpolated_ngram", data, ngram_mix, config, config.lm_weights));
  rows.back().heldout_perplexity =
      lm::Perplexity(lm::MixtureModel(ngram_mix.components, ngram_mix.weights), data.heldout).perplexity;

  const nnlm::LmMixture full_mix{{&in_domain, &broad, &neural}, full_em.weights};
  rows.push_back(Evaluate("interpolated_ngram_nnlm", data, full_mix, config, config.lm_weights));
  rows.back().heldout_perplexity =
      lm::Perplexity(lm::MixtureModel(full_mix.components, full_mix.weights), data.heldout).perplexity;
  return rows;
}

std::string LadderCsv(const std::vector<LadderRow>& rows) {
  std::ostringstream os;
  os << "row,heldout_ppl,mixture_weights,lm_weight,word_bonus,dev_wer,test_wer\n";
  for (const auto& r : rows) {
    std::string mix;
    for (double w : r.mixture_weights) mix += (mix.empty() ? "" : " ") + FormatDouble(w);
    os << r.name << ',' << FormatDouble(r.heldout_perplexity) << ',' << mix << ',' << FormatDouble(r.weights.lm)
       << ',' << FormatDouble(r.weights.wip) << ',' << FormatDouble(r.dev_wer) << ',' << FormatDouble(r.test_wer)
       << '\n';
  }
  return os.str();
}

}  // namespace hasr::experiment
