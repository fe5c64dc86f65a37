// tools/commands/lm_commands.cc

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

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "commands/common.h"
#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/decode/nbest.h"
#include "hasr/features/io.h"
#include "hasr/lm/arpa.h"
#include "hasr/lm/counts.h"
#include "hasr/lm/interpolate.h"
#include "hasr/lm/kneser_ney.h"
#include "hasr/lm/perplexity.h"
#include "hasr/lm/prune.h"
#include "hasr/nnlm/nnlm.h"
#include "hasr/nnlm/rescore.h"

namespace hasr::tools {
namespace fs = std::filesystem;
namespace {

lm::Vocabulary SharedVocabulary(const std::vector<std::string>& texts) {
  std::set<std::string> words;
  for (const auto& t : texts) {
    for (const auto& sentence : lm::ReadCorpus(t)) words.insert(sentence.begin(), sentence.end());
  }
  return lm::Vocabulary::FromWords({words.begin(), words.end()});
}

lm::CountTable CountText(const std::string& text, int order, const std::vector<std::string>& vocab_texts) {
  const lm::Corpus corpus = lm::ReadCorpus(text);
  if (vocab_texts.empty()) return lm::CountNgrams(corpus, order);
  std::vector<std::string> all = vocab_texts;
  all.push_back(text);
  return lm::CountNgrams(corpus, order, SharedVocabulary(all));
}

void PrintPpl(const lm::PerplexityResult& r) {
  std::cout << r.sentences << " sentences, " << r.scored_tokens << " scored tokens, " << r.oov_tokens
            << " OOVs\nlogprob= " << FormatDouble(r.log10_prob) << " ppl= " << FormatDouble(r.perplexity) << '\n';
}

// Components of a mixture, loaded by file type: ARPA text or binary NNLM.
struct LoadedLms {
  std::vector<std::unique_ptr<lm::LanguageModel>> owned;
  std::vector<const lm::LanguageModel*> Pointers() const {
    std::vector<const lm::LanguageModel*> out;
    for (const auto& m : owned) out.push_back(m.get());
    return out;
  }
};

LoadedLms LoadLms(const std::vector<std::string>& paths) {
  LoadedLms lms;
  for (const auto& p : paths) {
    if (fs::path(p).extension() == ".nnlm") {
      lms.owned.push_back(std::make_unique<nnlm::NnlmModel>(nnlm::NnlmModel::Load(p)));
    } else {
      lms.owned.push_back(std::make_unique<lm::NgramModel>(lm::ReadArpaFile(p)));
    }
  }
  return lms;
}

std::map<std::string, std::vector<std::string>> ReadReferences(const std::string& path) {
  std::map<std::string, std::vector<std::string>> refs;
  for (auto& [u, w] : features::ReadTranscripts(path)) refs[u] = std::move(w);
  return refs;
}

void PrintWer(const std::string& label, const decode::WerReport& w) {
  std::cout << label << " WER " << FormatDouble(100.0 * w.Rate()) << " % [ " << w.Errors() << " / "
            << w.reference_words << " ]\n";
}

struct RescoreOptions {
  std::string nbest, ref, dev_nbest, dev_ref, heldout, out;
  std::vector<std::string> lms;
  std::vector<double> mix_weights;
  double lm_weight = 1.0;
  double wip = 0.0;
  std::vector<double> lm_grid{0, 0.25, 0.5, 0.75, 1, 1.5, 2, 3, 4, 6, 8};
  std::vector<double> wip_grid{-2, -1, 0, 1, 2};
};

void RunRescore(const RescoreOptions& o) {
  const LoadedLms loaded = LoadLms(o.lms);
  nnlm::LmMixture mixture;
  mixture.components = loaded.Pointers();
  if (!mixture.empty()) {
    if (!o.mix_weights.empty()) {
      mixture.weights = o.mix_weights;
    } else if (!o.heldout.empty() && mixture.components.size() > 1) {
      const lm::EmResult em = lm::InterpolateEm(mixture.components, lm::ReadCorpus(o.heldout));
      mixture.weights = em.weights;
    } else {
      mixture.weights.assign(mixture.components.size(), 1.0 / static_cast<double>(mixture.components.size()));
    }
    lm::ValidateWeights(mixture.weights, mixture.components.size());
    std::cout << "mixture weights";
    for (double w : mixture.weights) std::cout << ' ' << FormatDouble(w);
    std::cout << '\n';
  }

  nnlm::RescoreWeights weights;
  weights.lm = o.lm_weight;
  weights.wip = o.wip;
  if (!o.dev_nbest.empty()) {
    if (o.dev_ref.empty()) throw ConfigError("--dev-nbest needs --dev-ref");
    const nnlm::GridResult g = nnlm::GridSearchWeights(decode::ReadNBestFile(o.dev_nbest), mixture,
                                                       ReadReferences(o.dev_ref), o.lm_grid, o.wip_grid);
    weights = g.weights;
    std::cout << "dev grid: lm_weight " << FormatDouble(weights.lm) << " wip " << FormatDouble(weights.wip) << '\n';
    PrintWer("dev", g.wer);
  }

  const auto lists = decode::ReadNBestFile(o.nbest);
  const auto rescored = nnlm::RescoreAll(lists, mixture, weights);
  if (!o.out.empty()) {
    std::vector<features::Transcript> best;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      best.emplace_back(lists[i].utt_id, lists[i].entries[rescored[i].Best()].words);
    }
    features::WriteTranscripts(o.out, best);
  }
  if (!o.ref.empty()) PrintWer("test", nnlm::OneBestWer(lists, rescored, ReadReferences(o.ref)));
}

}  // namespace

void AddLmCommands(CLI::App& app) {
  auto* lm_cmd = app.add_subcommand("lm", "n-gram language models");
  lm_cmd->require_subcommand(1);
  {
    auto* cmd = lm_cmd->add_subcommand("count", "count n-grams of a text");
    auto text = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto order = std::make_shared<int>(3);
    auto vocab = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--text", *text, "training text, one sentence per line")->required();
    cmd->add_option("--order", *order, "n-gram order");
    cmd->add_option("--vocab-text", *vocab, "extra texts whose words join the vocabulary");
    cmd->add_option("--out", *out, "counts file")->required();
    cmd->callback([=] { lm::WriteCounts(*out, CountText(*text, *order, *vocab)); });
  }
  {
    auto* cmd = lm_cmd->add_subcommand("estimate", "interpolated modified Kneser-Ney estimation");
    auto text = std::make_shared<std::string>();
    auto counts = std::make_shared<std::string>();
    auto arpa = std::make_shared<std::string>();
    auto order = std::make_shared<int>(3);
    auto vocab = std::make_shared<std::vector<std::string>>();
    auto* t = cmd->add_option("--text", *text, "training text");
    auto* c = cmd->add_option("--counts", *counts, "counts file from 'lm count'");
    t->excludes(c);
    cmd->add_option("--order", *order, "n-gram order (with --text)");
    cmd->add_option("--vocab-text", *vocab, "extra texts whose words join the vocabulary");
    cmd->add_option("--arpa", *arpa, "output ARPA file")->required();
    cmd->callback([=] {
      if (text->empty() == counts->empty()) throw ConfigError("give exactly one of --text or --counts");
      const lm::CountTable table = text->empty() ? lm::ReadCounts(*counts) : CountText(*text, *order, *vocab);
      const lm::NgramModel model = lm::EstimateKneserNey(table);
      lm::WriteArpaFile(*arpa, model);
      for (int k = 1; k <= model.order(); ++k) std::cout << "ngram " << k << "=" << model.NumEntries(k) << '\n';
    });
  }
  {
    auto* cmd = lm_cmd->add_subcommand("interp", "EM interpolation weights on held-out text");
    auto lms = std::make_shared<std::vector<std::string>>();
    auto heldout = std::make_shared<std::string>();
    auto merged = std::make_shared<std::string>();
    cmd->add_option("--lm", *lms, "component model (.arpa or .nnlm), repeat")->required();
    cmd->add_option("--heldout", *heldout, "held-out text")->required();
    cmd->add_option("--merge", *merged, "write the merged n-gram model here (ARPA components only)");
    cmd->callback([=] {
      const LoadedLms loaded = LoadLms(*lms);
      const lm::EmResult em = lm::InterpolateEm(loaded.Pointers(), lm::ReadCorpus(*heldout));
      std::cout << "iterations " << em.iterations << "\nweights";
      for (double w : em.weights) std::cout << ' ' << FormatDouble(w);
      std::cout << "\nheldout mean log-likelihood " << FormatDouble(em.log_likelihood.back()) << '\n';
      if (!merged->empty()) {
        std::vector<const lm::NgramModel*> ngrams;
        for (const auto& m : loaded.owned) {
          const auto* g = dynamic_cast<const lm::NgramModel*>(m.get());
          if (g == nullptr) throw ConfigError("--merge needs n-gram components only");
          ngrams.push_back(g);
        }
        lm::WriteArpaFile(*merged, lm::MergeInterpolated(ngrams, em.weights));
      }
    });
  }
  {
    auto* cmd = lm_cmd->add_subcommand("merge", "merge n-gram models with given weights");
    auto lms = std::make_shared<std::vector<std::string>>();
    auto weights = std::make_shared<std::vector<double>>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--lm", *lms, "ARPA model, repeat")->required();
    cmd->add_option("--weights", *weights, "interpolation weights")->required()->delimiter(',');
    cmd->add_option("--arpa", *out, "output ARPA file")->required();
    cmd->callback([=] {
      std::vector<lm::NgramModel> models;
      for (const auto& p : *lms) models.push_back(lm::ReadArpaFile(p));
      std::vector<const lm::NgramModel*> ptrs;
      for (const auto& m : models) ptrs.push_back(&m);
      lm::WriteArpaFile(*out, lm::MergeInterpolated(ptrs, *weights));
    });
  }
  {
    auto* cmd = lm_cmd->add_subcommand("prune", "relative-entropy pruning");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto threshold = std::make_shared<double>(1e-7);
    cmd->add_option("--arpa", *in, "input ARPA file")->required();
    cmd->add_option("--threshold", *threshold, "pruning threshold");
    cmd->add_option("--out", *out, "output ARPA file")->required();
    cmd->callback([=] {
      const lm::NgramModel model = lm::ReadArpaFile(*in);
      const lm::NgramModel pruned = lm::PruneByEntropy(model, *threshold);
      lm::WriteArpaFile(*out, pruned);
      std::cout << "entries " << model.TotalEntries() << " -> " << pruned.TotalEntries() << '\n';
    });
  }
  {
    auto* cmd = lm_cmd->add_subcommand("ppl", "perplexity of a text");
    auto lms = std::make_shared<std::vector<std::string>>();
    auto weights = std::make_shared<std::vector<double>>();
    auto text = std::make_shared<std::string>();
    auto skip = std::make_shared<bool>(false);
    cmd->add_option("--lm", *lms, "model (.arpa or .nnlm); repeat to score a mixture")->required();
    cmd->add_option("--weights", *weights, "mixture weights (default uniform)")->delimiter(',');
    cmd->add_option("--text", *text, "text to score")->required();
    cmd->add_flag("--skip-oov", *skip, "exclude OOV tokens instead of scoring <unk>");
    cmd->callback([=] {
      const LoadedLms loaded = LoadLms(*lms);
      const auto policy = *skip ? lm::OovPolicy::kSkip : lm::OovPolicy::kScoreUnk;
      const lm::Corpus corpus = lm::ReadCorpus(*text);
      if (loaded.owned.size() == 1) {
        PrintPpl(lm::Perplexity(*loaded.owned.front(), corpus, policy));
        return;
      }
      std::vector<double> w = *weights;
      if (w.empty()) w.assign(loaded.owned.size(), 1.0 / static_cast<double>(loaded.owned.size()));
      PrintPpl(lm::Perplexity(lm::MixtureModel(loaded.Pointers(), w), corpus, policy));
    });
  }

  auto* nn_cmd = app.add_subcommand("nnlm", "feed-forward neural language models");
  nn_cmd->require_subcommand(1);
  {
    auto* cmd = nn_cmd->add_subcommand("train", "train an NNLM");
    auto text = std::make_shared<std::string>();
    auto heldout = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto vocab = std::make_shared<std::vector<std::string>>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--text", *text, "training text")->required();
    cmd->add_option("--heldout", *heldout, "held-out text for per-epoch monitoring");
    cmd->add_option("--config", *config, "key-value config with nnlm.* keys");
    cmd->add_option("--vocab-text", *vocab, "extra texts whose words join the vocabulary");
    cmd->add_option("--out", *out, "output model (.nnlm)")->required();
    cmd->callback([=] {
      KvConfig kv = config->empty() ? KvConfig() : KvConfig::FromFile(*config);
      const nnlm::NnlmConfig cfg = nnlm::NnlmConfig::FromKv(kv, "nnlm.");
      RejectUnusedKeys(kv);
      std::vector<std::string> vocab_texts = *vocab;
      vocab_texts.push_back(*text);
      const lm::Corpus corpus = lm::ReadCorpus(*text);
      std::optional<lm::Corpus> held;
      if (!heldout->empty()) held = lm::ReadCorpus(*heldout);
      const nnlm::NnlmTrainResult r =
          nnlm::TrainNnlm(corpus, SharedVocabulary(vocab_texts), cfg, held ? &*held : nullptr);
      std::cout << "initial loss " << FormatDouble(r.initial_loss) << '\n';
      for (const auto& e : r.history) {
        std::cout << "epoch " << e.epoch << " lr " << FormatDouble(e.learning_rate) << " loss "
                  << FormatDouble(e.loss);
        if (e.has_heldout) std::cout << " heldout_loss " << FormatDouble(e.heldout_loss);
        std::cout << '\n';
      }
      r.model.Save(*out);
    });
  }
  {
    auto* cmd = nn_cmd->add_subcommand("ppl", "perplexity of a text under an NNLM");
    auto model = std::make_shared<std::string>();
    auto text = std::make_shared<std::string>();
    cmd->add_option("--model", *model, "model file")->required();
    cmd->add_option("--text", *text, "text to score")->required();
    cmd->callback([=] { PrintPpl(lm::Perplexity(nnlm::NnlmModel::Load(*model), lm::ReadCorpus(*text))); });
  }
  {
    auto* cmd = app.add_subcommand("rescore", "N-best rescoring with an LM mixture");
    auto o = std::make_shared<RescoreOptions>();
    cmd->add_option("--nbest", o->nbest, "N-best file to rescore")->required();
    cmd->add_option("--ref", o->ref, "references for WER");
    cmd->add_option("--lm", o->lms, "component model (.arpa or .nnlm), repeat");
    cmd->add_option("--mix-weights", o->mix_weights, "mixture weights")->delimiter(',');
    cmd->add_option("--heldout", o->heldout, "estimate mixture weights by EM on this text");
    cmd->add_option("--lm-weight", o->lm_weight, "LM scale");
    cmd->add_option("--wip", o->wip, "word insertion bonus");
    cmd->add_option("--dev-nbest", o->dev_nbest, "tune LM scale and bonus on this N-best file");
    cmd->add_option("--dev-ref", o->dev_ref, "references of the dev N-best file");
    cmd->add_option("--lm-grid", o->lm_grid, "LM scale grid")->delimiter(',');
    cmd->add_option("--wip-grid", o->wip_grid, "bonus grid")->delimiter(',');
    cmd->add_option("--out", o->out, "write rescored 1-best transcripts here");
    cmd->callback([=] { RunRescore(*o); });
  }
}

}  // namespace hasr::tools
